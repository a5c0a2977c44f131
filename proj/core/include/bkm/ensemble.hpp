#pragma once

#include <optional>
#include <string_view>

namespace bkm {

/// Sampling law for random density matrices.
///   BKM: entropy-metric (Bogoliubov-Kubo-Mori) ensemble, triangular recipe.
///   HS:  Hilbert-Schmidt, A A^dagger / Tr.
///   BH:  Bures-Hall, (I + U) A A^dagger (I + U^dagger) / Tr.
enum class EnsembleKind { BKM, HS, BH };

std::string_view to_string(EnsembleKind kind) noexcept;

/// Accepts "bkm", "hs", "bh" (case-insensitive).
std::optional<EnsembleKind> parse_ensemble(std::string_view name);

}  // namespace bkm
