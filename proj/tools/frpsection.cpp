// frpsection: cross-section analysis of rebar micrographs.
//
//   frpsection analyze IMAGE... [options]   JSON report per image (stdout or --out DIR)
//   frpsection synth disc|ellipse|half-disc --out PATH [options]

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "frp/image_io.hpp"
#include "frp/report.hpp"
#include "frp/synthetic.hpp"

namespace fs = std::filesystem;
using namespace frp;

namespace {

fs::path temp_sibling(const fs::path& target) {
    return target.parent_path() / (".tmp-" + target.filename().string());
}

void commit(const fs::path& tmp, const fs::path& target) {
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::io, "cannot write " + target.string());
    }
}

void write_text_atomic(const fs::path& target, const std::string& text) {
    const fs::path tmp = temp_sibling(target);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out.flush()) throw Error(ErrorKind::io, "cannot write " + tmp.string());
    }
    commit(tmp, target);
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct AnalyzeArgs {
    std::vector<std::string> images;
    std::string config_file;
    double scale = 0.0;
    std::vector<double> densities;
    std::string weight_mode;
    int window = 0;
    int rough_radius = 0;
    int fine_close = 0;
    int fine_open = 0;
    int otsu_classes = 0;
    double force = 0.0;
    double diameter = 0.0;
    std::string out_dir;
    bool overlay = false;
};

AnalysisConfig build_config(const AnalyzeArgs& a, const CLI::App& cmd) {
    AnalysisConfig c;
    if (!a.config_file.empty()) {
        try {
            c = config_from_json(nlohmann::json::parse(read_text(a.config_file)));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::invalid_argument, "config " + a.config_file + ": " + e.what());
        }
    }
    auto given = [&](const char* name) { return cmd.count(name) > 0; };
    if (given("--scale")) c.scale_override = a.scale;
    if (given("--densities")) c.densities = {a.densities[0], a.densities[1]};
    if (given("--weight-mode")) c.weight_mode = a.weight_mode == "local" ? WeightMode::local : WeightMode::global;
    if (given("--window")) c.window = a.window;
    if (given("--rough-radius")) c.segmentation.rough_radius = a.rough_radius;
    if (given("--fine-close")) c.segmentation.fine_close_radius = a.fine_close;
    if (given("--fine-open")) c.segmentation.fine_open_radius = a.fine_open;
    if (given("--otsu-classes")) c.segmentation.otsu_classes = a.otsu_classes;
    if (given("--force")) c.force_kN = a.force;
    if (given("--diameter")) c.diameter_mm = a.diameter;
    c.validate();
    return c;
}

int run_analyze(const AnalyzeArgs& a, const CLI::App& cmd) {
    const AnalysisConfig config = build_config(a, cmd);
    if (a.overlay && a.out_dir.empty()) throw Error(ErrorKind::invalid_argument, "--overlay requires --out");

    std::set<std::string> ids;
    std::vector<BatchInput> inputs;
    inputs.reserve(a.images.size());
    for (const auto& path : a.images) {
        const std::string id = fs::path(path).stem().string();
        if (!ids.insert(id).second) throw Error(ErrorKind::invalid_argument, "duplicate sample id " + id);
        inputs.push_back({id, load_grayscale(path, config.scale_override)});
    }
    if (!a.out_dir.empty()) fs::create_directories(a.out_dir);

    const auto results = analyze_batch(inputs, config);
    int status = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (!r.report) {
            std::cerr << "frpsection: " << a.images[i] << ": " << *r.error << "\n";
            status = 1;
            continue;
        }
        const std::string text = emit_json(*r.report);
        if (a.out_dir.empty()) {
            std::cout << text;
            continue;
        }
        const fs::path base = fs::path(a.out_dir) / inputs[i].sample_id;
        write_text_atomic(base.string() + ".json", text);
        if (a.overlay) {
            const fs::path target = base.string() + ".overlay.png";
            const fs::path tmp = temp_sibling(target);
            save_rgb_png(tmp, render_overlay(inputs[i].image, *r.report));
            commit(tmp, target);
        }
    }
    return status;
}

struct SynthArgs {
    std::string shape;
    std::string out;
    int width = 260;
    int height = 260;
    double scale = 0.01;
    double radius = 100.0;
    double a = 100.0;
    double b = 50.0;
    double rotation = 0.0;
    double split = 0.0;
    int noise = 0;
    std::uint64_t seed = 1;
    int lattice = 4;
    std::vector<std::vector<double>> satellites;
};

int run_synth(const SynthArgs& a) {
    SyntheticSpec spec;
    if (a.shape == "disc") {
        spec.shape = DiscShape{a.radius};
    } else if (a.shape == "ellipse") {
        spec.shape = EllipseShape{a.a, a.b, a.rotation};
    } else {
        spec.shape = HalfDensityDiscShape{a.radius, a.split};
    }
    spec.noise = a.noise;
    spec.seed = a.seed;
    spec.lattice_pitch = a.lattice;
    for (const auto& s : a.satellites) spec.satellites.push_back({s[0], s[1], s[2]});
    const SyntheticImage img = generate_synthetic(spec, a.width, a.height, a.scale);

    const fs::path target(a.out);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = temp_sibling(target);
    save_grayscale(tmp, img.image);
    commit(tmp, target);

    const GroundTruth& t = img.truth;
    nlohmann::ordered_json j;
    j["shape"] = a.shape;
    j["width"] = a.width;
    j["height"] = a.height;
    j["scale_mm_per_px"] = a.scale;
    j["area_mm2"] = t.area_mm2;
    j["centroid_geometric_px"] = {{"x", t.centroid_geometric.x}, {"y", t.centroid_geometric.y}};
    j["centroid_weighted_px"] = {{"x", t.centroid_weighted.x}, {"y", t.centroid_weighted.y}};
    j["shift_mm"] = t.shift_mm;
    j["shift_angle_deg"] = t.shift_angle_deg;
    j["I_1_mm4"] = t.I_1_mm4;
    j["I_2_mm4"] = t.I_2_mm4;
    write_text_atomic(target.string() + ".truth.json", j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-section geometry and stress analysis of rebar micrographs"};
    app.require_subcommand(1);

    AnalyzeArgs aa;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Analyze one or more cross-section images");
    analyze_cmd->add_option("images", aa.images, "PNG or TIFF images")->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--config", aa.config_file, "JSON config; flags override it")->check(CLI::ExistingFile);
    analyze_cmd->add_option("--scale", aa.scale, "mm per pixel, overrides the file header");
    analyze_cmd->add_option("--densities", aa.densities, "fibre,epoxy in kg/m^3")->delimiter(',')->expected(2);
    analyze_cmd->add_option("--weight-mode", aa.weight_mode, "global or local")
        ->check(CLI::IsMember({"global", "local"}));
    analyze_cmd->add_option("--window", aa.window, "local weighting window (odd)");
    analyze_cmd->add_option("--rough-radius", aa.rough_radius, "rough segmentation kernel radius, px");
    analyze_cmd->add_option("--fine-close", aa.fine_close, "fine closing radius, px");
    analyze_cmd->add_option("--fine-open", aa.fine_open, "fine opening radius, px");
    analyze_cmd->add_option("--otsu-classes", aa.otsu_classes, "rough multi-Otsu classes (2-4)");
    analyze_cmd->add_option("--force", aa.force, "tensile load N in kN");
    analyze_cmd->add_option("--diameter", aa.diameter, "declared bar diameter in mm");
    analyze_cmd->add_option("--out", aa.out_dir, "write <id>.json (and overlays) here instead of stdout");
    analyze_cmd->add_flag("--overlay", aa.overlay, "also write <id>.overlay.png");

    SynthArgs sa;
    CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic fixture with ground truth");
    synth_cmd->add_option("shape", sa.shape, "disc, ellipse or half-disc")
        ->required()
        ->check(CLI::IsMember({"disc", "ellipse", "half-disc"}));
    synth_cmd->add_option("--out", sa.out, "output PNG/TIFF path")->required();
    synth_cmd->add_option("--width", sa.width);
    synth_cmd->add_option("--height", sa.height);
    synth_cmd->add_option("--scale", sa.scale, "mm per pixel stored in the header");
    synth_cmd->add_option("--radius", sa.radius, "disc radius, px");
    synth_cmd->add_option("--a", sa.a, "ellipse semi-axis along the rotated horizontal, px");
    synth_cmd->add_option("--b", sa.b, "other ellipse semi-axis, px");
    synth_cmd->add_option("--rotation", sa.rotation, "ellipse rotation, degrees counter-clockwise");
    synth_cmd->add_option("--split", sa.split, "half-disc fibre side direction, degrees");
    synth_cmd->add_option("--noise", sa.noise, "uniform noise amplitude, grey levels");
    synth_cmd->add_option("--seed", sa.seed);
    synth_cmd->add_option("--lattice", sa.lattice, "fibre dot pitch, 0 for plain epoxy");
    synth_cmd->add_option("--satellite", sa.satellites, "cx,cy,r in px (repeatable)")
        ->delimiter(',')
        ->expected(3)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    CLI11_PARSE(app, argc, argv);
    try {
        if (analyze_cmd->parsed()) return run_analyze(aa, *analyze_cmd);
        return run_synth(sa);
    } catch (const std::exception& e) {
        std::cerr << "frpsection: " << e.what() << "\n";
        return 1;
    }
}
