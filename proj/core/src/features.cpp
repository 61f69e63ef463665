#include "cepstra/features.hpp"

#include "cepstra/errors.hpp"

#include <cmath>
#include <cstddef>

namespace cepstra {

namespace {

// A masked crop needs at least 2 pixels on each side for every
// co-occurrence direction to have pairs; below that the channel is
// reported as invalid rather than half-extracted.
constexpr int kMinCropSide = 2;

Plane cepstrum_as_plane(const Cepstrum& c) {
    Plane p;
    p.width = c.width;
    p.height = c.height;
    p.data = c.data;
    return p;
}

double histogram_entropy_bits(const QuantizedPlane& q) {
    std::vector<std::size_t> counts(q.levels, 0);
    for (const std::uint16_t v : q.data) counts[v]++;
    const double n = static_cast<double>(q.data.size());
    double h = 0.0;
    for (const std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

} // namespace

ChannelStatistics channel_statistics(const Cepstrum& c, int levels) {
    if (!c.valid) throw ContractError("channel_statistics: invalid cepstrum");
    const double n = static_cast<double>(c.data.size());
    double sum = 0.0;
    for (const double v : c.data) sum += v;
    const double mean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (const double v : c.data) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    ChannelStatistics s;
    s.mean = mean;
    s.std_dev = std::sqrt(m2);
    if (s.std_dev == 0.0) {
        s.skew = 0.0;
        s.kurtosis = 0.0;
        s.moments_degenerate = true;
    } else {
        s.skew = m3 / (m2 * s.std_dev);
        s.kurtosis = m4 / (m2 * m2) - 3.0;
    }
    s.entropy = histogram_entropy_bits(quantize(cepstrum_as_plane(c), levels));
    return s;
}

ChannelFeatures extract_channel_features(const Plane& plane, const LesionMask& mask, int levels) {
    ChannelFeatures f;
    const Plane masked = apply_mask(plane, mask);
    if (masked.width < kMinCropSide || masked.height < kMinCropSide) return f;

    const Cepstrum c = real_cepstrum_2d(masked);
    if (!c.valid) return f;

    const ChannelStatistics stats = channel_statistics(c, levels);
    f.values[0] = stats.mean;
    f.values[1] = stats.std_dev;
    f.values[2] = stats.skew;
    f.values[3] = stats.kurtosis;
    f.values[4] = stats.entropy;
    f.moments_degenerate = stats.moments_degenerate;

    const RadialProfile prof = radial_profile(center_shift(c));
    const auto [peak, auc] = radial_peak_and_auc(prof);
    f.values[5] = peak;
    f.values[6] = auc;

    const DirectionalFeatureSet dirs = directional_features(quantize(cepstrum_as_plane(c), levels));
    for (int i = 0; i < kTextureFeatureCount; ++i) {
        f.values[7 + i] = dirs.mean[i];
        f.values[7 + kTextureFeatureCount + i] = dirs.directionality[i];
        f.dir_degenerate[i] = dirs.degenerate[i];
    }
    f.valid = true;
    return f;
}

FeatureVector extract_image(const std::string& image_path, const std::string& mask_path,
                            int levels) {
    const ColorStack rgb = load_image(image_path);
    const LesionMask mask = load_mask(mask_path, rgb.width(), rgb.height());
    const std::array<ColorStack, 4> stacks = convert_color_spaces(rgb);

    FeatureVector v;
    int idx = 0;
    for (int s = 0; s < 4; ++s) {
        for (int ch = 0; ch < 3; ++ch) {
            const ChannelFeatures f = extract_channel_features(stacks[s].channels[ch], mask, levels);
            const int channel_slot = s * 3 + ch;
            v.channel_valid[channel_slot] = f.valid;
            v.moments_degenerate[channel_slot] = f.moments_degenerate;
            v.dir_degenerate[channel_slot] = f.dir_degenerate;
            for (int k = 0; k < kStatsPerChannel; ++k) v.values[idx++] = f.values[k];
        }
    }
    return v;
}

const std::array<std::string, kStatsPerChannel>& channel_stat_suffixes() {
    static const std::array<std::string, kStatsPerChannel> suffixes = [] {
        std::array<std::string, kStatsPerChannel> s;
        int i = 0;
        s[i++] = "mean";
        s[i++] = "std";
        s[i++] = "skew";
        s[i++] = "kurtosis";
        s[i++] = "cepstral_entropy";
        s[i++] = "radial_peak_val";
        s[i++] = "radial_AUC";
        for (const char* f : kTextureFeatureNames) s[i++] = std::string("Har_Cep_") + f;
        for (const char* f : kTextureFeatureNames) s[i++] = std::string("Har_Cep_") + f + "_Dir";
        return s;
    }();
    return suffixes;
}

const std::vector<std::string>& canonical_feature_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        out.reserve(kFeaturesPerImage);
        for (int s = 0; s < 4; ++s) {
            const std::string space = color_space_name(static_cast<ColorSpace>(s));
            for (int ch = 0; ch < 3; ++ch) {
                const std::string prefix = space + "_C" + std::to_string(ch) + "_";
                for (const std::string& suffix : channel_stat_suffixes())
                    out.push_back(prefix + suffix);
            }
        }
        return out;
    }();
    return names;
}

std::optional<FeatureName> parse_feature_name(const std::string& name) {
    static const std::array<std::string, 4> spaces = {"RGB", "Lab", "HSV", "YCrCb"};
    for (int s = 0; s < 4; ++s) {
        const std::string& space = spaces[s];
        if (name.size() < space.size() + 4) continue;
        if (name.compare(0, space.size(), space) != 0) continue;
        if (name[space.size()] != '_' || name[space.size() + 1] != 'C') continue;
        const char digit = name[space.size() + 2];
        if (digit < '0' || digit > '2') continue;
        if (name[space.size() + 3] != '_') continue;
        const std::string stat = name.substr(space.size() + 4);
        for (const std::string& suffix : channel_stat_suffixes()) {
            if (stat == suffix)
                return FeatureName{static_cast<ColorSpace>(s), digit - '0', stat};
        }
        return std::nullopt;
    }
    return std::nullopt;
}

const std::vector<std::string>& flag_column_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        std::array<std::string, kChannelsPerImage> prefixes;
        for (int s = 0; s < 4; ++s) {
            const std::string space = color_space_name(static_cast<ColorSpace>(s));
            for (int ch = 0; ch < 3; ++ch)
                prefixes[s * 3 + ch] = space + "_C" + std::to_string(ch) + "_";
        }
        for (const std::string& p : prefixes) out.push_back(p + "valid");
        for (const std::string& p : prefixes) out.push_back(p + "moments_flag");
        for (const std::string& p : prefixes)
            for (const char* f : kTextureFeatureNames)
                out.push_back(p + "Har_Cep_" + f + "_Dir_flag");
        return out;
    }();
    return names;
}

FeatureTable feature_table_from_vectors(const std::vector<FeatureVector>& vectors) {
    FeatureTable t;
    t.columns = canonical_feature_names();
    const std::vector<std::string>& flags = flag_column_names();
    t.columns.insert(t.columns.end(), flags.begin(), flags.end());
    t.values.assign(t.columns.size(), std::vector<double>(vectors.size(), 0.0));

    t.has_labels = !vectors.empty();
    for (const FeatureVector& v : vectors)
        if (v.label < 0) t.has_labels = false;

    for (std::size_t r = 0; r < vectors.size(); ++r) {
        const FeatureVector& v = vectors[r];
        t.ids.push_back(v.image_id);
        if (t.has_labels) t.labels.push_back(v.label);
        std::size_t col = 0;
        for (int k = 0; k < kFeaturesPerImage; ++k) t.values[col++][r] = v.values[k];
        for (int ch = 0; ch < kChannelsPerImage; ++ch)
            t.values[col++][r] = v.channel_valid[ch] ? 1.0 : 0.0;
        for (int ch = 0; ch < kChannelsPerImage; ++ch)
            t.values[col++][r] = v.moments_degenerate[ch] ? 1.0 : 0.0;
        for (int ch = 0; ch < kChannelsPerImage; ++ch)
            for (int i = 0; i < kTextureFeatureCount; ++i)
                t.values[col++][r] = v.dir_degenerate[ch][i] ? 1.0 : 0.0;
    }
    return t;
}

} // namespace cepstra
