#pragma once

#include "cepstra/table.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cepstra {

enum class SynthKind { EchoNoise, Grating, BlobNoise };

/// Accepts "echo-noise", "grating", "blob-noise"; anything else is a
/// usage error.
SynthKind parse_synth_kind(const std::string& name);
std::string synth_kind_name(SynthKind kind);

struct SynthParams {
    SynthKind kind = SynthKind::Grating;
    int count = 40;      // total images; class 1 gets the first half (rounded up)
    int size = 96;       // square image side in pixels
    double period = 8.0; // texture period (pixels) for the class-1 images
    std::uint64_t seed = 11;
};

/// Generate a two-class dataset under out_dir: class 1 images carry
/// periodic texture at the configured period, class 0 images are
/// aperiodic; every image gets an elliptical lesion mask and its own
/// lesion id. Images land in out_dir/images, masks in out_dir/masks.
/// Fully deterministic for a given parameter set.
std::vector<ManifestRow> generate_synth_dataset(const SynthParams& params,
                                                const std::string& out_dir);

} // namespace cepstra
