#pragma once

#include "cepstra/cepstrum.hpp"
#include "cepstra/imaging.hpp"
#include "cepstra/table.hpp"
#include "cepstra/texture.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cepstra {

inline constexpr int kStatsPerChannel = 35;   // 5 moments/entropy + 2 radial + 14 + 14
inline constexpr int kChannelsPerImage = 12;  // 4 color spaces x 3 channels
inline constexpr int kFeaturesPerImage = kStatsPerChannel * kChannelsPerImage; // 420

/// Global statistics of a cepstral plane. Entropy is the base-2 Shannon
/// entropy of the 256-bin histogram of the quantized cepstrum; kurtosis is
/// excess. A zero standard deviation forces skew and kurtosis to 0 and
/// sets the degeneracy flag.
struct ChannelStatistics {
    double mean = 0.0;
    double std_dev = 0.0;
    double skew = 0.0;
    double kurtosis = 0.0;
    double entropy = 0.0;
    bool moments_degenerate = false;
};

ChannelStatistics channel_statistics(const Cepstrum& c, int levels = 256);

/// The 35 per-channel features in canonical order plus validity and
/// degeneracy bookkeeping. When valid is false every value is the 0
/// sentinel.
struct ChannelFeatures {
    std::array<double, kStatsPerChannel> values{};
    bool valid = false;
    bool moments_degenerate = false;
    std::array<bool, kTextureFeatureCount> dir_degenerate{};
};

/// Full per-channel pipeline: mask crop, 2D real cepstrum, global
/// statistics, centered radial profile peak/AUC, quantization and
/// directional GLCM features. A channel whose masked crop is smaller than
/// 2x2 or whose cepstrum is invalid comes back with valid = false.
ChannelFeatures extract_channel_features(const Plane& plane, const LesionMask& mask,
                                         int levels = 256);

/// One image's extracted features with canonical names.
struct FeatureVector {
    std::string image_id;
    int label = -1; // -1 when unlabeled
    std::array<double, kFeaturesPerImage> values{};
    std::array<bool, kChannelsPerImage> channel_valid{};
    std::array<bool, kChannelsPerImage> moments_degenerate{};
    std::array<std::array<bool, kTextureFeatureCount>, kChannelsPerImage> dir_degenerate{};
};

/// Load, convert to the four color spaces, and extract all 12 channels.
FeatureVector extract_image(const std::string& image_path, const std::string& mask_path,
                            int levels = 256);

/// The 35 per-channel stat suffixes in canonical order
/// (mean, std, ..., Har_Cep_<f>, ..., Har_Cep_<f>_Dir, ...).
const std::array<std::string, kStatsPerChannel>& channel_stat_suffixes();

/// The 420 canonical feature names, ordered space-major then channel.
const std::vector<std::string>& canonical_feature_names();

struct FeatureName {
    ColorSpace space;
    int channel;
    std::string stat;
};

/// Parse a name under the `{SPACE}_C{k}_{stat}` grammar; nullopt if the
/// name is not one of the 420 canonical features.
std::optional<FeatureName> parse_feature_name(const std::string& name);

/// Bookkeeping columns appended after the 420 features: per-channel
/// `<SPACE>_C<k>_valid` and `<SPACE>_C<k>_moments_flag`, then per
/// channel and texture feature `<SPACE>_C<k>_Har_Cep_<f>_Dir_flag`.
const std::vector<std::string>& flag_column_names();

/// Assemble extracted vectors (in the given order) into a feature table
/// with the canonical 420 columns followed by the flag columns. Labels
/// are attached when every vector carries one.
FeatureTable feature_table_from_vectors(const std::vector<FeatureVector>& vectors);

} // namespace cepstra
