// Command-line front end: training-set construction, super-resolution,
// baselines, evaluation and inspection.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dirsr/dirsr.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace dirsr;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kIo = 3, kData = 4 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Run {
    json inputs = json::object();
    json outputs = json::array();
};

std::vector<std::uint8_t> read_file(const std::string& path, Run& run) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path);
    char digest[16];
    std::snprintf(digest, sizeof digest, "%08x", detail::crc32_of(bytes));
    run.inputs[path] = std::string("crc32:") + digest;
    return bytes;
}

// Writes through a temporary so a failed run never leaves a partial file.
void write_file(const std::string& path, std::span<const std::uint8_t> bytes, Run& run) {
    const std::string tmp = path + ".part";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path);
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("write failed: " + path);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot write " + path + ": " + ec.message());
    run.outputs.push_back(path);
}

void write_text(const std::string& path, const std::string& text, Run& run) {
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()), run);
}

Image load_image(const std::string& path, Run& run) {
    const auto bytes = read_file(path, run);
    try {
        return read_pgm(bytes);
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void save_image(const std::string& path, const Image& img, Run& run) {
    write_file(path, write_pgm(img, PgmMode::Binary, 255), run);
}

TrainingSet load_trainset(const std::string& path, Run& run) {
    const auto bytes = read_file(path, run);
    try {
        return load_training_set(bytes);
    } catch (const LoadError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string report_csv(const SRReport& report) {
    std::ostringstream os;
    os << "patch_row,patch_col,pair,used_pair,distance,fallback,match_image,match_row,match_col\n";
    for (const auto& p : report.patches) {
        os << p.patch_row << ',' << p.patch_col << ',' << canonical_pairs()[static_cast<std::size_t>(p.pair_index)].name()
           << ',';
        if (p.used_pair_index >= 0) os << canonical_pairs()[static_cast<std::size_t>(p.used_pair_index)].name();
        else os << "none";
        os << ',' << fmt(p.distance) << ',' << (p.fallback ? 1 : 0) << ',' << p.match_image << ',' << p.match_row
           << ',' << p.match_col << '\n';
    }
    return os.str();
}

std::string grid_text(const Plane& p) {
    std::ostringstream os;
    for (int r = 0; r < p.height(); ++r) {
        for (int c = 0; c < p.width(); ++c) os << (c ? " " : "") << fmt(p(r, c));
        os << '\n';
    }
    return os.str();
}

Fallback parse_fallback(const std::string& s) {
    if (s == "interpolate-only") return Fallback::InterpolateOnly;
    if (s == "nearest-any-direction") return Fallback::NearestAnyDirection;
    throw UsageError("--fallback must be interpolate-only or nearest-any-direction");
}

DirectionPair parse_pair(const std::string& s) {
    for (const auto& p : canonical_pairs())
        if (p.name() == "(" + s + ")" || p.name() == s) return p;
    throw UsageError("--pair must be one of 0,90 0,45 0,-45 90,45 90,-45");
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

// ---- subcommands -----------------------------------------------------------

struct BuildArgs {
    std::vector<std::string> inputs;
    std::string output;
};

int cmd_build_trainset(const BuildArgs& a, Run& run) {
    std::vector<Image> corpus;
    for (const auto& path : a.inputs) corpus.push_back(load_image(path, run));
    const TrainingSet ts = build_training_set(corpus);
    write_file(a.output, save_training_set(ts), run);
    std::cout << "records: " << ts.total_records() << '\n';
    for (std::size_t g = 0; g < 5; ++g)
        std::cout << "group " << canonical_pairs()[g].name() << ": " << ts.groups[g].size() << '\n';
    return kOk;
}

struct SuperResolveArgs {
    std::string input, trainset, output, fallback = "interpolate-only", report;
};

int cmd_super_resolve(const SuperResolveArgs& a, Run& run) {
    SRConfig cfg;
    cfg.fallback = parse_fallback(a.fallback);
    const Image lr = load_image(a.input, run);
    const TrainingSet ts = load_trainset(a.trainset, run);
    const auto [hr, report] = super_resolve(lr, ts, cfg);
    save_image(a.output, hr, run);
    if (!a.report.empty()) write_text(a.report, report_csv(report), run);
    std::cout << "output: " << hr.width() << "x" << hr.height() << " fallback: " << fmt(100 * report.fallback_fraction())
              << "%\n";
    return kOk;
}

struct EvaluateArgs {
    std::string reference;
    std::vector<std::string> candidates;
    std::string output;
};

int cmd_evaluate(const EvaluateArgs& a, Run& run) {
    const Image ref = load_image(a.reference, run);
    std::string csv = "method,mse\n";
    for (const auto& path : a.candidates) {
        const Image cand = load_image(path, run);
        try {
            csv += stem(path) + "," + fmt(mse(ref, cand)) + "\n";
        } catch (const Error& e) {
            throw ShapeError(path + ": " + e.what());
        }
    }
    if (!a.output.empty()) write_text(a.output, csv, run);
    std::cout << csv;
    return kOk;
}

struct DecimateArgs {
    std::string input, output;
    int q = 2;
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

int cmd_decimate(const DecimateArgs& a, Run& run) {
    const Image hr = load_image(a.input, run);
    save_image(a.output, add_noise(decimate(hr, a.q), a.sigma, a.seed), run);
    return kOk;
}

struct BaselineArgs {
    std::string input, spline_out, wm2_out, wm2_approx = "spline";
    std::vector<std::string> corpus;
};

int cmd_baseline(const BaselineArgs& a, Run& run) {
    if (a.spline_out.empty() && a.wm2_out.empty()) throw UsageError("give --spline-output and/or --wm2-output");
    if (!a.wm2_out.empty() && a.corpus.empty()) throw UsageError("--wm2-output needs --corpus");
    Wm2Approximation approx;
    if (a.wm2_approx == "spline") approx = Wm2Approximation::Interpolated;
    else if (a.wm2_approx == "lr") approx = Wm2Approximation::LowResPatch;
    else throw UsageError("--wm2-approx must be spline or lr");

    const Image lr = load_image(a.input, run);
    if (!a.spline_out.empty()) save_image(a.spline_out, spline_baseline(lr), run);
    if (!a.wm2_out.empty()) {
        std::vector<Image> corpus;
        for (const auto& path : a.corpus) corpus.push_back(load_image(path, run));
        save_image(a.wm2_out, wm2_super_resolve(lr, wm2_build(corpus, approx)), run);
    }
    return kOk;
}

struct DumpArgs {
    std::string input, output, pair = "auto", mode = "oversampled";
    int row = 0, col = 0, size = 8;
};

int cmd_transform_dump(const DumpArgs& a, Run& run) {
    const Image img = load_image(a.input, run);
    if (a.size < 1 || a.row < 0 || a.col < 0 || a.row + a.size > img.height() || a.col + a.size > img.width())
        throw PreconditionError("patch at (" + std::to_string(a.row) + "," + std::to_string(a.col) + ") of size " +
                                std::to_string(a.size) + " lies outside the image");
    Mode mode;
    if (a.mode == "oversampled") mode = Mode::Oversampled;
    else if (a.mode == "critical") mode = Mode::Critical;
    else throw UsageError("--mode must be oversampled or critical");

    const Plane patch = block(img.plane(), a.row, a.col, a.size);
    const DirectionChoice choice = best_direction(patch);
    const DirectionPair pair = a.pair == "auto" ? choice.pair : parse_pair(a.pair);
    const SubbandSet s = forward_awt21(patch, pair, mode);

    std::ostringstream os;
    os << "best_direction " << choice.pair.name() << '\n';
    for (std::size_t i = 0; i < 5; ++i) os << "energy " << canonical_pairs()[i].name() << ' ' << fmt(choice.energies[i]) << '\n';
    os << "pair " << pair.name() << "\nmode " << to_string(mode) << '\n';
    for (std::size_t b = 0; b < 8; ++b) os << "band " << kBandNames[b] << '\n' << grid_text(s.bands[b]);
    if (a.output.empty()) std::cout << os.str();
    else write_text(a.output, os.str(), run);
    return kOk;
}

struct DemoArgs {
    std::string dir;
    int size = 256;
    bool with_lr = true;
};

int cmd_make_demo_corpus(const DemoArgs& a, Run& run) {
    std::error_code ec;
    fs::create_directories(fs::path(a.dir) / "lr", ec);
    if (ec) throw IoError("cannot create " + a.dir + ": " + ec.message());
    auto emit = [&](const demo::NamedImage& n) {
        save_image((fs::path(a.dir) / (n.name + ".pgm")).string(), n.image, run);
        if (a.with_lr) save_image((fs::path(a.dir) / "lr" / (n.name + ".pgm")).string(), decimate(n.image, 2), run);
    };
    if (a.size < 8 || a.size % 8 != 0) throw PreconditionError("--size must be a positive multiple of 8");
    for (const auto& n : demo::training_corpus(a.size)) emit(n);
    for (const auto& n : demo::test_corpus(a.size)) emit(n);
    std::cout << "wrote " << run.outputs.size() << " images to " << a.dir << '\n';
    return kOk;
}

json resolved_flags(const CLI::App* sub) {
    json flags = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
        const auto& res = opt->results();
        const std::string name = opt->get_lnames()[0];
        if (opt->get_items_expected_max() > 1) flags[name] = res;
        else if (!res.empty()) flags[name] = res.back();
        else flags[name] = opt->get_default_str();
    }
    return flags;
}

}  // namespace

int main(int argc, char** argv) {
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"Directionlet-based single-image super-resolution by a factor of 2"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "write the run manifest here instead of stderr");

    BuildArgs build;
    auto* sub_build = app.add_subcommand("build-trainset", "build a training set from high-resolution PGM images");
    sub_build->add_option("inputs", build.inputs, "high-resolution training images")->required();
    sub_build->add_option("-o,--output", build.output, "training-set file to write")->required();

    SuperResolveArgs sr;
    auto* sub_sr = app.add_subcommand("super-resolve", "upsample a low-resolution PGM by 2 with learned details");
    sub_sr->add_option("--input", sr.input, "low-resolution PGM")->required();
    sub_sr->add_option("--trainset", sr.trainset, "training-set file")->required();
    sub_sr->add_option("--output", sr.output, "high-resolution PGM to write")->required();
    sub_sr->add_option("--fallback", sr.fallback, "interpolate-only | nearest-any-direction")
        ->capture_default_str();
    sub_sr->add_option("--report", sr.report, "per-patch CSV report");

    EvaluateArgs ev;
    auto* sub_ev = app.add_subcommand("evaluate", "normalized MSE of candidates against a reference");
    sub_ev->add_option("--reference", ev.reference, "ground-truth PGM")->required();
    sub_ev->add_option("--candidates", ev.candidates, "reconstructed PGMs; method = file stem")->required();
    sub_ev->add_option("--output", ev.output, "also write the CSV table here");

    DecimateArgs dec;
    auto* sub_dec = app.add_subcommand(
        "decimate",
        "q x q block averaging plus optional Gaussian noise. Noise uses std::mt19937_64 seeded with --seed and "
        "Box-Muller normals from 53-bit uniforms, applied in row-major order; output is clamped to [0,1]");
    sub_dec->add_option("--input", dec.input, "high-resolution PGM")->required();
    sub_dec->add_option("--output", dec.output, "low-resolution PGM to write")->required();
    sub_dec->add_option("--q", dec.q, "decimation factor")->capture_default_str()->check(CLI::PositiveNumber);
    sub_dec->add_option("--sigma", dec.sigma, "noise standard deviation")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub_dec->add_option("--seed", dec.seed, "noise seed")->capture_default_str();

    BaselineArgs base;
    auto* sub_base = app.add_subcommand("baseline", "cubic-spline and/or block-wavelet (method 2) upsampling");
    sub_base->add_option("--input", base.input, "low-resolution PGM")->required();
    sub_base->add_option("--spline-output", base.spline_out, "cubic-spline result");
    sub_base->add_option("--wm2-output", base.wm2_out, "block-wavelet result");
    sub_base->add_option("--corpus", base.corpus, "high-resolution training images for the wavelet baseline");
    sub_base->add_option("--wm2-approx", base.wm2_approx, "approximation band source: spline | lr")
        ->capture_default_str();

    DumpArgs dump;
    auto* sub_dump = app.add_subcommand("transform-dump", "print the eight AWT(2,1) subbands of one patch");
    sub_dump->add_option("--input", dump.input, "PGM image")->required();
    sub_dump->add_option("--row", dump.row, "top row of the patch")->capture_default_str();
    sub_dump->add_option("--col", dump.col, "left column of the patch")->capture_default_str();
    sub_dump->add_option("--size", dump.size, "patch side")->capture_default_str();
    sub_dump->add_option("--pair", dump.pair, "auto or one of 0,90 0,45 0,-45 90,45 90,-45")->capture_default_str();
    sub_dump->add_option("--mode", dump.mode, "oversampled | critical")->capture_default_str();
    sub_dump->add_option("--output", dump.output, "text file (default stdout)");

    DemoArgs demo_args;
    auto* sub_demo = app.add_subcommand("make-demo-corpus", "write the bundled synthetic corpus as PGM files");
    sub_demo->add_option("--output-dir", demo_args.dir, "target directory")->required();
    sub_demo->add_option("--size", demo_args.size, "image side")->capture_default_str();
    sub_demo->add_flag("!--no-lr", demo_args.with_lr, "skip the decimated copies under lr/");

    Run run;
    int code = kOk;
    std::string error;
    CLI::App* chosen = nullptr;
    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::Success& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            throw UsageError(e.what());
        }
        chosen = app.get_subcommands().front();
        const std::string name = chosen->get_name();
        if (name == "build-trainset") code = cmd_build_trainset(build, run);
        else if (name == "super-resolve") code = cmd_super_resolve(sr, run);
        else if (name == "evaluate") code = cmd_evaluate(ev, run);
        else if (name == "decimate") code = cmd_decimate(dec, run);
        else if (name == "baseline") code = cmd_baseline(base, run);
        else if (name == "transform-dump") code = cmd_transform_dump(dump, run);
        else code = cmd_make_demo_corpus(demo_args, run);
    } catch (const UsageError& e) {
        code = kUsage;
        error = e.what();
    } catch (const IoError& e) {
        code = kIo;
        error = e.what();
    } catch (const Error& e) {
        code = kData;
        error = e.what();
    } catch (const std::exception& e) {
        code = kIo;
        error = e.what();
    }
    // CLI11 has already printed its own parse errors
    if (!error.empty() && chosen) std::cerr << "dirsr: error: " << error << '\n';

    json manifest;
    manifest["tool"] = "dirsr";
    manifest["version"] = kVersion;
    manifest["subcommand"] = chosen ? chosen->get_name() : "";
    manifest["flags"] = chosen ? resolved_flags(chosen) : json::object();
    manifest["inputs"] = run.inputs;
    manifest["outputs"] = run.outputs;
    manifest["exit_code"] = code;
    if (!error.empty()) manifest["error"] = error;
    manifest["duration_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string line = manifest.dump();
    if (manifest_path.empty()) {
        std::cerr << line << '\n';
    } else {
        std::ofstream out(manifest_path, std::ios::trunc);
        out << line << '\n';
        if (!out) {
            std::cerr << "dirsr: error: cannot write manifest " << manifest_path << '\n';
            if (code == kOk) code = kIo;
        }
    }
    return code;
}
