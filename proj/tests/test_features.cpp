#include "cepstra/errors.hpp"
#include "cepstra/features.hpp"
#include "cepstra/imaging.hpp"
#include "cepstra/rng.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

using namespace cepstra;
using testsup::TempDir;

namespace {

Cepstrum cepstrum_of_values(std::initializer_list<double> vals) {
    Cepstrum c;
    c.width = static_cast<int>(vals.size());
    c.height = 1;
    c.valid = true;
    c.data.assign(vals.begin(), vals.end());
    return c;
}

/// A deterministic RGB test image: smooth gradient plus diagonal texture.
void write_textured_rgb(const std::string& path, int n, std::uint64_t seed) {
    Rng rng(seed);
    Plane r = make_plane(n, n), g = make_plane(n, n), b = make_plane(n, n);
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col) {
            const double base = 0.3 + 0.3 * (row + col) / (2.0 * n);
            const double tex = 0.12 * (((row / 3 + col / 3) % 2 == 0) ? 1.0 : -1.0);
            const double wob = 0.05 * rng.uniform();
            r.at(row, col) = std::clamp(base + tex + wob, 0.0, 1.0);
            g.at(row, col) = std::clamp(base * 0.8 + tex + wob, 0.0, 1.0);
            b.at(row, col) = std::clamp(base * 0.6 - tex + wob, 0.0, 1.0);
        }
    testsup::write_rgb_png(path, r, g, b);
}

} // namespace

TEST_CASE("the canonical name list is 420 unique names in fixed order") {
    const auto& names = canonical_feature_names();
    REQUIRE(names.size() == 420);
    const std::set<std::string> uniq(names.begin(), names.end());
    CHECK(uniq.size() == 420);

    CHECK(names[0] == "RGB_C0_mean");
    CHECK(names[1] == "RGB_C0_std");
    CHECK(names[4] == "RGB_C0_cepstral_entropy");
    CHECK(names[5] == "RGB_C0_radial_peak_val");
    CHECK(names[6] == "RGB_C0_radial_AUC");
    CHECK(names[7] == "RGB_C0_Har_Cep_energy");
    CHECK(names[20] == "RGB_C0_Har_Cep_trace");
    CHECK(names[21] == "RGB_C0_Har_Cep_energy_Dir");
    CHECK(names[34] == "RGB_C0_Har_Cep_trace_Dir");
    CHECK(names[35] == "RGB_C1_mean");
    CHECK(names[105] == "Lab_C0_mean");
    CHECK(names[210] == "HSV_C0_mean");
    CHECK(names[315] == "YCrCb_C0_mean");
    CHECK(names[419] == "YCrCb_C2_Har_Cep_trace_Dir");
}

TEST_CASE("every published top-20 name parses under the grammar") {
    const char* published[] = {
        "RGB_C1_std",
        "RGB_C0_std",
        "RGB_C1_radial_peak_val",
        "RGB_C1_radial_AUC",
        "YCrCb_C0_std",
        "Lab_C0_std",
        "Lab_C2_Har_Cep_sum_entropy_Dir",
        "Lab_C1_Har_Cep_sum_entropy_Dir",
        "YCrCb_C2_Har_Cep_sum_entropy_Dir",
        "YCrCb_C2_std",
        "YCrCb_C2_cepstral_entropy",
        "YCrCb_C1_Har_Cep_sum_entropy_Dir",
        "YCrCb_C1_cepstral_entropy",
        "YCrCb_C1_Har_Cep_contrast",
        "YCrCb_C2_Har_Cep_contrast",
        "Lab_C2_cepstral_entropy",
        "Lab_C1_cepstral_entropy",
        "Lab_C1_Har_Cep_contrast",
        "Lab_C2_Har_Cep_contrast",
        "RGB_C0_radial_peak_val",
    };
    const auto& canon = canonical_feature_names();
    for (const char* name : published) {
        CAPTURE(name);
        const auto parsed = parse_feature_name(name);
        REQUIRE(parsed.has_value());
        CHECK(std::find(canon.begin(), canon.end(), name) != canon.end());
    }
    // spot-check the decode itself
    const auto p = parse_feature_name("YCrCb_C2_cepstral_entropy");
    REQUIRE(p.has_value());
    CHECK(p->space == ColorSpace::YCrCb);
    CHECK(p->channel == 2);
    CHECK(p->stat == "cepstral_entropy");
}

TEST_CASE("the grammar rejects near-miss names") {
    CHECK_FALSE(parse_feature_name("RGB_C3_mean").has_value());
    CHECK_FALSE(parse_feature_name("XYZ_C0_mean").has_value());
    CHECK_FALSE(parse_feature_name("RGB_C0_bogus").has_value());
    CHECK_FALSE(parse_feature_name("RGB_C0_").has_value());
    CHECK_FALSE(parse_feature_name("rgb_C0_mean").has_value());
    CHECK_FALSE(parse_feature_name("RGB_C0_valid").has_value());
    CHECK_FALSE(parse_feature_name("RGB_C0_moments_flag").has_value());
    CHECK_FALSE(parse_feature_name("RGB_C0_Har_Cep_trace_Dir_flag").has_value());
    CHECK_FALSE(parse_feature_name("").has_value());
    CHECK_FALSE(parse_feature_name("RGB_C0_meanx").has_value());
}

TEST_CASE("flag columns cover validity, moments, and directionality") {
    const auto& flags = flag_column_names();
    REQUIRE(flags.size() == 12 + 12 + 168);
    CHECK(flags[0] == "RGB_C0_valid");
    CHECK(flags[11] == "YCrCb_C2_valid");
    CHECK(flags[12] == "RGB_C0_moments_flag");
    CHECK(flags[23] == "YCrCb_C2_moments_flag");
    CHECK(flags[24] == "RGB_C0_Har_Cep_energy_Dir_flag");
    CHECK(flags.back() == "YCrCb_C2_Har_Cep_trace_Dir_flag");
    const std::set<std::string> uniq(flags.begin(), flags.end());
    CHECK(uniq.size() == flags.size());
    // no flag column collides with a feature name
    const auto& canon = canonical_feature_names();
    for (const auto& f : flags)
        CHECK(std::find(canon.begin(), canon.end(), f) == canon.end());
}

TEST_CASE("channel statistics on tiny hand vectors") {
    SUBCASE("three point values") {
        const auto s = channel_statistics(cepstrum_of_values({1.0, 2.0, 3.0}));
        CHECK(s.mean == 2.0);
        CHECK(s.std_dev == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
        CHECK(std::fabs(s.skew) < 1e-12);
        CHECK(s.kurtosis == doctest::Approx(-1.5).epsilon(1e-12));
        CHECK(s.entropy == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
        CHECK_FALSE(s.moments_degenerate);
    }
    SUBCASE("constant data degenerates cleanly") {
        const auto s = channel_statistics(cepstrum_of_values({0.4, 0.4, 0.4, 0.4}));
        CHECK(s.mean == doctest::Approx(0.4));
        CHECK(s.std_dev == 0.0);
        CHECK(s.skew == 0.0);
        CHECK(s.kurtosis == 0.0);
        CHECK(s.entropy == 0.0);
        CHECK(s.moments_degenerate);
    }
    SUBCASE("a full uniform ramp maxes out the histogram entropy") {
        Cepstrum c;
        c.width = 256;
        c.height = 1;
        c.valid = true;
        for (int i = 0; i < 256; ++i) c.data.push_back(static_cast<double>(i));
        const auto s = channel_statistics(c, 256);
        CHECK(s.entropy == 8.0);
    }
    SUBCASE("invalid cepstrum is refused") {
        Cepstrum c;
        c.width = 2;
        c.height = 1;
        c.data = {0.0, 0.0};
        c.valid = false;
        CHECK_THROWS_AS(channel_statistics(c), ContractError);
    }
}

TEST_CASE("per-channel extraction produces 35 finite values on texture") {
    const Plane p = testsup::grating_plane(48, 48, 8, 0.2);
    const auto f = extract_channel_features(p, testsup::full_mask(48, 48));
    CHECK(f.valid);
    for (double v : f.values) CHECK(std::isfinite(v));
    // std must be positive on a non-constant crop
    CHECK(f.values[1] > 0.0);
}

TEST_CASE("periodic texture lights up the radial profile more than noise") {
    const auto grating =
        extract_channel_features(testsup::grating_plane(64, 64, 8, 0.2), testsup::full_mask(64, 64));
    const auto noise =
        extract_channel_features(testsup::random_plane(64, 64, 77), testsup::full_mask(64, 64));
    REQUIRE(grating.valid);
    REQUIRE(noise.valid);
    CHECK(grating.values[5] > noise.values[5]); // radial_peak_val
    CHECK(grating.values[6] > noise.values[6]); // radial_AUC
}

TEST_CASE("degenerate masked input falls back to the zero sentinel") {
    SUBCASE("an all-zero plane under the mask") {
        const auto f = extract_channel_features(make_plane(16, 16, 0.0), testsup::full_mask(16, 16));
        CHECK_FALSE(f.valid);
        for (double v : f.values) CHECK(v == 0.0);
    }
    SUBCASE("a crop smaller than 2x2") {
        LesionMask m;
        m.width = 16;
        m.height = 16;
        m.data.assign(256, 0);
        m.data[5 * 16 + 7] = 1;
        const auto f = extract_channel_features(testsup::random_plane(16, 16, 3), m);
        CHECK_FALSE(f.valid);
        for (double v : f.values) CHECK(v == 0.0);
    }
}

TEST_CASE("the mask actually gates what the features see") {
    const Plane p = testsup::random_plane(40, 40, 1001);
    const auto full = extract_channel_features(p, testsup::full_mask(40, 40));

    LesionMask half;
    half.width = 40;
    half.height = 40;
    half.data.assign(1600, 0);
    for (int r = 8; r < 32; ++r)
        for (int c = 8; c < 32; ++c) half.data[static_cast<std::size_t>(r) * 40 + c] = 1;
    const auto inner = extract_channel_features(p, half);

    REQUIRE(full.valid);
    REQUIRE(inner.valid);
    CHECK(full.values != inner.values);
}

TEST_CASE("a quarter turn leaves the per-channel features nearly unchanged") {
    const Plane p = testsup::grating_plane(32, 32, 8, 0.15);
    Plane mixed = p;
    Rng rng(55);
    for (auto& v : mixed.data) v = std::clamp(v + 0.05 * rng.uniform(), 0.0, 1.0);

    const auto base = extract_channel_features(mixed, testsup::full_mask(32, 32));
    const auto turned = extract_channel_features(testsup::rot90(mixed), testsup::full_mask(32, 32));
    REQUIRE(base.valid);
    REQUIRE(turned.valid);
    // Smooth statistics of the cepstral plane track the rotation tightly.
    // Histogram- and co-occurrence-derived statistics are exposed to
    // quantization bin edges: the rotated transform rounds differently, a
    // few near-edge pixels flip bins, and entropy-family values move at
    // the 1e-2 scale on a 32x32 crop. The anisotropy quotients divide by
    // a directional mean that can sit near zero (cepstral correlation),
    // where the ratio is ill-conditioned, so only their invariant shape
    // is asserted here; direction bookkeeping itself is checked exactly
    // at the matrix level in the texture tests.
    for (const std::size_t i : {0, 1, 2, 3, 5, 6}) {
        CAPTURE(i);
        CHECK(std::fabs(base.values[i] - turned.values[i]) <=
              1e-6 * std::max(1.0, std::fabs(base.values[i])));
    }
    std::vector<std::size_t> bin_sensitive = {4};
    for (std::size_t i = 7; i <= 20; ++i) bin_sensitive.push_back(i);
    for (const std::size_t i : bin_sensitive) {
        CAPTURE(i);
        CHECK(std::fabs(base.values[i] - turned.values[i]) <=
              5e-2 * std::max(1.0, std::fabs(base.values[i])));
    }
    for (std::size_t i = 21; i < base.values.size(); ++i) {
        CAPTURE(i);
        CHECK(std::isfinite(turned.values[i]));
        CHECK(turned.values[i] >= 1.0 - 1e-12);
    }
}

TEST_CASE("full image extraction is complete, named, and bit-deterministic") {
    TempDir tmp;
    const auto img = tmp.file("tex.png");
    const auto mpath = tmp.file("tex_mask.png");
    write_textured_rgb(img, 48, 2024);
    LesionMask m;
    m.width = 48;
    m.height = 48;
    m.data.assign(48 * 48, 0);
    for (int r = 4; r < 44; ++r)
        for (int c = 6; c < 42; ++c) m.data[static_cast<std::size_t>(r) * 48 + c] = 1;
    testsup::write_mask_png(mpath, m);

    const FeatureVector a = extract_image(img, mpath);
    for (double v : a.values) CHECK(std::isfinite(v));
    for (bool valid : a.channel_valid) CHECK(valid);

    const FeatureVector b = extract_image(img, mpath);
    CHECK(std::memcmp(a.values.data(), b.values.data(), sizeof(a.values)) == 0);

    // named access: the H channel of HSV is values[6*35 + k]
    const auto& names = canonical_feature_names();
    CHECK(names[6 * 35 + 1] == "HSV_C0_std");
}

TEST_CASE("feature tables carry values, labels, and flags") {
    TempDir tmp;
    const auto img = tmp.file("t.png");
    const auto mpath = tmp.file("m.png");
    write_textured_rgb(img, 32, 7);
    testsup::write_mask_png(mpath, testsup::full_mask(32, 32));

    FeatureVector v0 = extract_image(img, mpath);
    v0.image_id = "a";
    v0.label = 1;
    FeatureVector v1 = v0;
    v1.image_id = "b";
    v1.label = 0;

    const FeatureTable t = feature_table_from_vectors({v0, v1});
    CHECK(t.n_rows() == 2);
    CHECK(t.has_labels);
    CHECK(t.labels == std::vector<int>{1, 0});
    CHECK(t.n_cols() == 420 + 192);
    CHECK(t.column("RGB_C0_valid")[0] == 1.0);
    CHECK(t.column("RGB_C0_valid")[1] == 1.0);

    // unlabeled vectors drop the label column
    v1.label = -1;
    const FeatureTable u = feature_table_from_vectors({v0, v1});
    CHECK_FALSE(u.has_labels);
}

TEST_CASE("an unusable channel is flagged and zeroed in the table") {
    TempDir tmp;
    const auto img = tmp.file("t.png");
    const auto mpath = tmp.file("m.png");
    write_textured_rgb(img, 24, 8);
    // single-pixel mask: every channel crop collapses below 2x2
    LesionMask m;
    m.width = 24;
    m.height = 24;
    m.data.assign(24 * 24, 0);
    m.data[12 * 24 + 12] = 1;
    testsup::write_mask_png(mpath, m);

    FeatureVector v = extract_image(img, mpath);
    v.image_id = "degenerate";
    for (bool valid : v.channel_valid) CHECK_FALSE(valid);
    for (double x : v.values) CHECK(x == 0.0);

    const FeatureTable t = feature_table_from_vectors({v});
    for (const auto& flag : flag_column_names())
        if (flag.find("_valid") != std::string::npos) CHECK(t.column(flag)[0] == 0.0);
}
