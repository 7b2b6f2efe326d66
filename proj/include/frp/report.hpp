#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frp/geometry.hpp"
#include "frp/segmentation.hpp"
#include "frp/stress.hpp"
#include "frp/weights.hpp"

namespace frp {

enum class WeightMode { global, local };

struct AnalysisConfig {
    SegmentationConfig segmentation;
    MaterialDensities densities;
    WeightMode weight_mode = WeightMode::global;
    int window = 7;
    std::optional<double> scale_override;  // mm per pixel
    std::optional<double> force_kN;
    std::optional<double> diameter_mm;

    void validate() const;
    std::optional<double> declared_area_mm2() const;
};

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kTruncatedWarning = "section truncated";

struct SectionReport {
    std::string sample_id;
    AnalysisConfig config;
    int width = 0;
    int height = 0;
    double scale = 0.0;
    std::size_t area_px = 0;
    bool touches_border = false;
    double void_fraction = 0.0;
    std::optional<int> fibre_threshold;  // global mode only
    double zero_weight_fraction = 0.0;
    SectionProperties properties;
    bool shift_reliable = true;
    std::optional<StressReport> stress;
    std::vector<std::string> warnings;
};

SectionReport analyze(const CalibratedImage& image, const AnalysisConfig& config, std::string sample_id = {});

struct BatchInput {
    std::string sample_id;
    CalibratedImage image;
};

/// Either a report or the diagnostic of the stage that failed.
struct BatchResult {
    std::optional<SectionReport> report;
    std::optional<std::string> error;
};

/// Images are analyzed concurrently; results keep the input order.
std::vector<BatchResult> analyze_batch(const std::vector<BatchInput>& inputs, const AnalysisConfig& config);

nlohmann::ordered_json config_to_json(const AnalysisConfig& config);
/// Missing keys keep their defaults.
AnalysisConfig config_from_json(const nlohmann::json& j);

nlohmann::ordered_json report_to_json(const SectionReport& report);
/// Indented JSON with a trailing newline; measured values carry 6 significant digits.
std::string emit_json(const SectionReport& report);

/// Annotated copy of the image: geometric centroid and original axes in red, weighted
/// centroid in blue, principal axes in green, eccentricity line in yellow with A (cyan)
/// and E (magenta) marked.
Rgb8 render_overlay(const CalibratedImage& image, const SectionReport& report);

}  // namespace frp
