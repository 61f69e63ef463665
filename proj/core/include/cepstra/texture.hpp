#pragma once

#include "cepstra/imaging.hpp"

#include <array>
#include <vector>

namespace cepstra {

/// GLCM pixel-pair directions at distance 1.
enum class Direction { Deg0 = 0, Deg45 = 1, Deg90 = 2, Deg135 = 3 };

inline constexpr std::array<Direction, 4> kAllDirections = {
    Direction::Deg0, Direction::Deg45, Direction::Deg90, Direction::Deg135};

/// Row/column offset of the pixel pair for a direction.
std::pair<int, int> direction_offset(Direction d);

/// Symmetric, normalized gray-level co-occurrence matrix for one direction
/// at pixel distance 1.
struct CooccurrenceMatrix {
    int levels = 0;
    Direction direction = Direction::Deg0;
    std::vector<double> p; // levels x levels, row-major, sums to 1

    double at(int i, int j) const { return p[static_cast<std::size_t>(i) * levels + j]; }
    double& at(int i, int j) { return p[static_cast<std::size_t>(i) * levels + j]; }
};

/// Canonical order of the 14 per-direction texture features
/// (13 Haralick statistics plus the matrix trace).
inline constexpr std::array<const char*, 14> kTextureFeatureNames = {
    "energy",          "contrast",      "correlation",        "variance",
    "homogeneity",     "sum_average",   "sum_variance",       "sum_entropy",
    "entropy",         "difference_variance", "difference_entropy", "imc1",
    "imc2",            "trace"};

inline constexpr int kTextureFeatureCount = 14;

/// Build the co-occurrence matrix of a quantized plane for one direction:
/// counts over offset pairs, symmetrized by adding the transpose, then
/// normalized to sum 1. Throws DataError if the plane admits no pair for
/// the offset.
CooccurrenceMatrix glcm(const QuantizedPlane& q, Direction direction);

/// The 13 stable Haralick statistics (maximal correlation coefficient
/// excluded), base-2 logs, 0*log0 == 0, zero-variance correlation
/// defined as 0. Order matches kTextureFeatureNames[0..12].
std::array<double, 13> haralick13(const CooccurrenceMatrix& m);

/// Sum of the diagonal of the normalized matrix.
double glcm_trace(const CooccurrenceMatrix& m);

/// Per-direction texture features with mean and directionality aggregates.
/// directionality = max_d |value_d| / |mean|, the anisotropy quotient; a
/// zero mean degenerates to 1.0 with the corresponding flag set.
struct DirectionalFeatureSet {
    std::array<std::array<double, 14>, 4> per_direction; // [direction][feature]
    std::array<double, 14> mean;
    std::array<double, 14> directionality;
    std::array<bool, 14> degenerate;
};

/// Compute glcm + haralick13 + trace for all four directions and aggregate.
/// Requires a plane of at least 2x2 so every direction has a pair.
DirectionalFeatureSet directional_features(const QuantizedPlane& q);

} // namespace cepstra
