// mycolex command line: spike detection, tokenization, spiking machines,
// complexity measures, synchronization, bar codes and synthetic data.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mycolex/errors.hpp"
#include "mycolex/json_io.hpp"
#include "mycolex/machine.hpp"
#include "mycolex/multichannel.hpp"
#include "mycolex/pipeline.hpp"
#include "mycolex/recording.hpp"
#include "mycolex/svg.hpp"
#include "mycolex/synthgen.hpp"

namespace fs = std::filesystem;
using namespace mycolex;

namespace {

struct DetectorOptions {
    std::string species;
    std::optional<std::int64_t> w;
    std::optional<double> delta;
    std::optional<std::int64_t> d;

    DetectorParams resolve() const {
        const bool has_explicit = w || delta || d;
        if (!species.empty() && has_explicit) {
            throw config_error("--species and explicit --w/--delta/--d are mutually exclusive");
        }
        if (!species.empty()) return species_preset(species);
        if (!(w && delta && d)) {
            throw config_error("need --species or all of --w, --delta, --d");
        }
        DetectorParams p{*w, *delta, *d};
        validate_params(p);
        return p;
    }
};

void add_detector_options(CLI::App* cmd, DetectorOptions& opts) {
    cmd->add_option("--species", opts.species,
                    "species preset: c_militaris, f_velutipes, s_commune, o_nidiformis");
    cmd->add_option("--w", opts.w, "neighbourhood half-scale, samples");
    cmd->add_option("--delta", opts.delta, "prominence threshold, mV");
    cmd->add_option("--d", opts.d, "minimum peak separation, samples");
}

struct ThetaOptions {
    std::string multiplier = "both";  // 1, 2 or both
    std::string mode = "pooled";      // pooled or per-channel

    std::vector<int> multipliers() const {
        if (multiplier == "1") return {1};
        if (multiplier == "2") return {2};
        if (multiplier == "both") return {1, 2};
        throw config_error("--theta-multiplier must be 1, 2 or both");
    }
    ThetaMode theta_mode() const {
        if (mode == "pooled") return ThetaMode::pooled;
        if (mode == "per-channel") return ThetaMode::per_channel;
        throw config_error("--theta-mode must be pooled or per-channel");
    }
};

void add_theta_options(CLI::App* cmd, ThetaOptions& opts) {
    cmd->add_option("--theta-multiplier", opts.multiplier, "1, 2 or both")
        ->default_str("both");
    cmd->add_option("--theta-mode", opts.mode, "pooled or per-channel")
        ->default_str("pooled");
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory '" + dir + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw io_error("write failed for '" + path + "'");
}

std::string section_suffix(int multiplier) { return multiplier == 1 ? "a" : "2a"; }

json stats_file_json(const Recording& rec, const DetectionResult& det) {
    json stats;
    stats["channels"] = json::array();
    for (std::size_t c = 0; c < rec.channels.size(); ++c) {
        json ch;
        ch["name"] = rec.channels[c].name;
        ch["stats"] = stats_to_json(det.stats[c]);
        stats["channels"].push_back(std::move(ch));
    }
    stats["pooled"] = stats_to_json(det.pooled);
    return stats;
}

void write_rate_files(const std::string& out_dir, const Recording& rec,
                      const DetectionResult& det, int rate_window) {
    for (std::size_t c = 0; c < rec.channels.size(); ++c) {
        const auto rates = spike_rate_series(det.events[c], rate_window);
        std::string csv = "t,rate_hz\n";
        char buf[80];
        for (const auto& r : rates) {
            std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n", r.time_s, r.rate_hz);
            csv += buf;
        }
        write_text_file(out_dir + "/rate_" + rec.channels[c].name + ".csv", csv);
    }
}

std::vector<SpikeEvent> flatten_events(const DetectionResult& det) {
    std::vector<SpikeEvent> all;
    for (const auto& channel_events : det.events) {
        all.insert(all.end(), channel_events.begin(), channel_events.end());
    }
    return all;
}

int run_detect(const std::string& input, const DetectorOptions& dopts,
               const std::string& out_dir, int rate_window) {
    const DetectorParams params = dopts.resolve();
    const Recording rec = load_recording(input);
    const DetectionResult det = detect_recording(rec, params);
    ensure_out_dir(out_dir);
    write_json_file(spikes_to_json(flatten_events(det)), out_dir + "/spikes.json");
    write_json_file(stats_file_json(rec, det), out_dir + "/stats.json");
    if (rate_window > 0) write_rate_files(out_dir, rec, det, rate_window);
    return 0;
}

int run_tokenize(const std::string& input, const DetectorOptions& dopts,
                 const ThetaOptions& topts, const std::string& out_dir) {
    const DetectorParams params = dopts.resolve();
    const Recording rec = load_recording(input);
    const DetectionResult det = detect_recording(rec, params);
    ensure_out_dir(out_dir);
    for (int multiplier : topts.multipliers()) {
        const std::string suffix = section_suffix(multiplier);
        const auto sentences = tokenize_channels(det, multiplier, topts.theta_mode());
        json sentence_arr = json::array();
        for (const auto& s : sentences) sentence_arr.push_back(sentence_to_json(s));
        write_json_file(sentence_arr, out_dir + "/sentences_" + suffix + ".json");
        const WordLengthDistribution dist = word_length_distribution(sentences);
        write_json_file(distribution_to_json(dist), out_dir + "/distribution_" + suffix + ".json");
        std::string hist = "length,count\n";
        for (const auto& [length, count] : dist.counts) {
            hist += std::to_string(length) + "," + std::to_string(count) + "\n";
        }
        write_text_file(out_dir + "/distribution_" + suffix + ".csv", hist);
        json fit = nullptr;
        try {
            fit = fit_to_json(fit_power_law(dist));
        } catch (const config_error&) {
        }
        write_json_file(fit, out_dir + "/fit_" + suffix + ".json");
    }
    return 0;
}

int run_machine(const std::string& input, const DetectorOptions& dopts,
                const ThetaOptions& topts, std::optional<int> max_state,
                const std::string& out_dir) {
    const DetectorParams params = dopts.resolve();
    const Recording rec = load_recording(input);
    const DetectionResult det = detect_recording(rec, params);
    ensure_out_dir(out_dir);
    for (int multiplier : topts.multipliers()) {
        const std::string suffix = section_suffix(multiplier);
        const auto sentences = tokenize_channels(det, multiplier, topts.theta_mode());
        json out = nullptr;
        try {
            const TransitionGraph g = build_machine(sentences, max_state);
            out = machine_to_json(g, analyze_machine(g));
            write_text_file(out_dir + "/machine_" + suffix + ".dot", to_dot(g));
            write_text_file(out_dir + "/machine_filtered_" + suffix + ".dot",
                            to_dot(filter_graph(g)));
        } catch (const config_error&) {
        }
        write_json_file(out, out_dir + "/machine_" + suffix + ".json");
    }
    return 0;
}

int run_complexity(const std::string& input, const DetectorOptions& dopts,
                   const ThetaOptions& topts, std::optional<int> cap,
                   const std::string& ctm_path, const std::string& out_dir) {
    const DetectorParams params = dopts.resolve();
    const Recording rec = load_recording(input);
    const DetectionResult det = detect_recording(rec, params);
    CtmTable table;
    const bool have_table = !ctm_path.empty();
    if (have_table) table = load_ctm_table(ctm_path);
    ensure_out_dir(out_dir);
    for (int multiplier : topts.multipliers()) {
        const std::string suffix = section_suffix(multiplier);
        const auto sentences = tokenize_channels(det, multiplier, topts.theta_mode());
        const SymbolSequence seq = sentences_to_sequence(sentences, cap);
        json out = nullptr;
        if (!seq.symbols.empty()) {
            const CtmTable* tbl =
                have_table && seq.symbols.size() >= static_cast<std::size_t>(table.block_size)
                    ? &table
                    : nullptr;
            const ComplexityReport raw = compute_complexity(seq, tbl);
            out = complexity_to_json(raw, normalize_report(raw));
        }
        write_json_file(out, out_dir + "/complexity_" + suffix + ".json");
    }
    return 0;
}

int run_sync(const std::string& input, const DetectorOptions& dopts, double window_s,
             std::string channel_a, std::string channel_b, const std::string& out_dir) {
    const DetectorParams params = dopts.resolve();
    const Recording rec = load_recording(input);
    if (rec.channels.size() < 2) throw config_error("sync needs at least two channels");
    const DetectionResult det = detect_recording(rec, params);
    if (channel_a.empty()) channel_a = rec.channels[0].name;
    if (channel_b.empty()) channel_b = rec.channels[1].name;
    auto find = [&](const std::string& name) -> std::size_t {
        for (std::size_t c = 0; c < rec.channels.size(); ++c) {
            if (rec.channels[c].name == name) return c;
        }
        throw config_error("no channel named '" + name + "'");
    };
    const auto matches =
        match_spikes(det.events[find(channel_a)], det.events[find(channel_b)], window_s);
    ensure_out_dir(out_dir);
    json out;
    out["channel_a"] = channel_a;
    out["channel_b"] = channel_b;
    out["window_s"] = window_s;
    out["matches"] = matches_to_json(matches);
    json intervals = json::array();
    for (double v : match_interval_series(matches)) intervals.push_back(v);
    out["interval_series"] = std::move(intervals);
    write_json_file(out, out_dir + "/matches.json");
    return 0;
}

int run_barcode(const std::string& spikes_path, const std::string& out_path,
                std::optional<double> duration) {
    const json j = read_json_file(spikes_path);
    const auto events = spikes_from_json(j);
    write_text_file(out_path, barcode_svg(events, duration));
    return 0;
}

struct SynthCliOptions {
    std::string species = "s_commune";
    std::uint64_t seed = 42;
    std::optional<double> pulse_width;
    double noise = 0.0;
    int channels = 1;
    std::optional<std::int64_t> count;
    int burst_spikes = 0;
    double burst_isi = 400.0;
    std::string out = "recording.csv";
    std::string truth = "";
};

double default_pulse_width(const std::string& species) {
    // Half the species preset's w keeps the averaging bias on detected
    // amplitudes near 6%.
    return static_cast<double>(species_preset(species).w) / 2.0;
}

int run_synth(const SynthCliOptions& opts) {
    SpeciesProfile profile = species_profile(opts.species);
    if (opts.count) profile.spike_count = *opts.count;
    SynthOptions gen;
    gen.pulse_width_s = opts.pulse_width.value_or(default_pulse_width(opts.species));
    gen.noise_mv = opts.noise;
    gen.channels = opts.channels;

    std::uint64_t seed = opts.seed;
    if (const char* env = std::getenv("MYCOLEX_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            throw config_error("MYCOLEX_SEED must be an unsigned integer");
        }
    }

    const SynthResult result =
        opts.burst_spikes > 0
            ? generate_burst(profile, opts.burst_spikes, opts.burst_isi, seed, gen)
            : generate_recording(profile, seed, gen);
    save_recording(result.recording, opts.out);
    if (!opts.truth.empty()) {
        write_json_file(spikes_to_json(result.truth, /*planted=*/true), opts.truth);
    }
    return 0;
}

int run_report(const std::string& input, const DetectorOptions& dopts,
               const ThetaOptions& topts, std::optional<int> cap,
               std::optional<int> max_state, const std::string& ctm_path,
               double sync_window, const std::string& out_path) {
    const DetectorParams params = dopts.resolve();
    const Recording rec = load_recording(input);
    CtmTable table;
    ReportConfig config;
    config.theta_multipliers = topts.multipliers();
    config.theta_mode = topts.theta_mode();
    config.alphabet_cap = cap;
    config.machine_max_state = max_state;
    config.sync_window_s = sync_window;
    if (!ctm_path.empty()) {
        table = load_ctm_table(ctm_path);
        config.ctm_table = &table;
    }
    write_json_file(build_report(rec, params, config), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spike-train lexicon and complexity toolkit"};
    app.require_subcommand(1);

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "detect spikes and write stats");
    std::string detect_input, detect_out = "out";
    DetectorOptions detect_dopts;
    int detect_rate_window = 0;
    detect_cmd->add_option("--input", detect_input, "recording CSV")->required();
    add_detector_options(detect_cmd, detect_dopts);
    detect_cmd->add_option("--out", detect_out, "output directory");
    detect_cmd->add_option("--rate-window", detect_rate_window,
                           "also write spike-rate CSVs over this many ISIs");

    // tokenize
    auto* tok_cmd = app.add_subcommand("tokenize", "group spikes into words and sentences");
    std::string tok_input, tok_out = "out";
    DetectorOptions tok_dopts;
    ThetaOptions tok_topts;
    tok_cmd->add_option("--input", tok_input, "recording CSV")->required();
    add_detector_options(tok_cmd, tok_dopts);
    add_theta_options(tok_cmd, tok_topts);
    tok_cmd->add_option("--out", tok_out, "output directory");

    // machine
    auto* machine_cmd = app.add_subcommand("machine", "build and analyze spiking machines");
    std::string machine_input, machine_out = "out";
    DetectorOptions machine_dopts;
    ThetaOptions machine_topts;
    std::optional<int> machine_max_state;
    machine_cmd->add_option("--input", machine_input, "recording CSV")->required();
    add_detector_options(machine_cmd, machine_dopts);
    add_theta_options(machine_cmd, machine_topts);
    machine_cmd->add_option("--max-state", machine_max_state,
                            "drop words longer than this before pairing");
    machine_cmd->add_option("--out", machine_out, "output directory");

    // complexity
    auto* cx_cmd = app.add_subcommand("complexity", "entropy, LZ and BDM measures");
    std::string cx_input, cx_out = "out", cx_ctm;
    DetectorOptions cx_dopts;
    ThetaOptions cx_topts;
    std::optional<int> cx_cap;
    cx_cmd->add_option("--input", cx_input, "recording CSV")->required();
    add_detector_options(cx_cmd, cx_dopts);
    add_theta_options(cx_cmd, cx_topts);
    cx_cmd->add_option("--cap", cx_cap, "drop words longer than this many spikes");
    cx_cmd->add_option("--ctm-table", cx_ctm, "CTM table TSV for BDM");
    cx_cmd->add_option("--out", cx_out, "output directory");

    // sync
    auto* sync_cmd = app.add_subcommand("sync", "cross-channel spike matching");
    std::string sync_input, sync_out = "out", sync_a, sync_b;
    DetectorOptions sync_dopts;
    double sync_window = 300.0;
    sync_cmd->add_option("--input", sync_input, "recording CSV")->required();
    add_detector_options(sync_cmd, sync_dopts);
    sync_cmd->add_option("--window", sync_window, "matching window, seconds");
    sync_cmd->add_option("--channel-a", sync_a, "first channel name (default: first)");
    sync_cmd->add_option("--channel-b", sync_b, "second channel name (default: second)");
    sync_cmd->add_option("--out", sync_out, "output directory");

    // barcode
    auto* bar_cmd = app.add_subcommand("barcode", "render spikes as an SVG bar code");
    std::string bar_spikes, bar_out = "barcode.svg";
    std::optional<double> bar_duration;
    bar_cmd->add_option("--spikes", bar_spikes, "spike list JSON")->required();
    bar_cmd->add_option("--out", bar_out, "output SVG path");
    bar_cmd->add_option("--duration", bar_duration, "x-axis span, seconds");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic recording");
    SynthCliOptions synth_opts;
    synth_cmd->add_option("--species", synth_opts.species,
                          "profile: c_militaris, f_velutipes, s_commune, o_nidiformis");
    synth_cmd->add_option("--seed", synth_opts.seed,
                          "RNG seed (env MYCOLEX_SEED overrides)");
    synth_cmd->add_option("--count", synth_opts.count, "spike count override");
    synth_cmd->add_option("--pulse-width", synth_opts.pulse_width,
                          "triangle base width, seconds");
    synth_cmd->add_option("--noise", synth_opts.noise, "white noise stddev, mV");
    synth_cmd->add_option("--channels", synth_opts.channels, "number of channels");
    synth_cmd->add_option("--burst-spikes", synth_opts.burst_spikes,
                          "embed a dense burst of this many spikes");
    synth_cmd->add_option("--burst-isi", synth_opts.burst_isi, "burst ISI, seconds");
    synth_cmd->add_option("--out", synth_opts.out, "recording CSV path");
    synth_cmd->add_option("--truth", synth_opts.truth, "planted spike JSON path");

    // report
    auto* report_cmd = app.add_subcommand("report", "full pipeline into one JSON");
    std::string report_input, report_out = "report.json", report_ctm;
    DetectorOptions report_dopts;
    ThetaOptions report_topts;
    std::optional<int> report_cap, report_max_state;
    double report_sync_window = 300.0;
    report_cmd->add_option("--input", report_input, "recording CSV")->required();
    add_detector_options(report_cmd, report_dopts);
    add_theta_options(report_cmd, report_topts);
    report_cmd->add_option("--cap", report_cap, "alphabet cap for complexity");
    report_cmd->add_option("--max-state", report_max_state, "machine state cap");
    report_cmd->add_option("--ctm-table", report_ctm, "CTM table TSV for BDM");
    report_cmd->add_option("--sync-window", report_sync_window, "matching window, seconds");
    report_cmd->add_option("--out", report_out, "report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (detect_cmd->parsed()) {
            return run_detect(detect_input, detect_dopts, detect_out, detect_rate_window);
        }
        if (tok_cmd->parsed()) return run_tokenize(tok_input, tok_dopts, tok_topts, tok_out);
        if (machine_cmd->parsed()) {
            return run_machine(machine_input, machine_dopts, machine_topts,
                               machine_max_state, machine_out);
        }
        if (cx_cmd->parsed()) {
            return run_complexity(cx_input, cx_dopts, cx_topts, cx_cap, cx_ctm, cx_out);
        }
        if (sync_cmd->parsed()) {
            return run_sync(sync_input, sync_dopts, sync_window, sync_a, sync_b, sync_out);
        }
        if (bar_cmd->parsed()) return run_barcode(bar_spikes, bar_out, bar_duration);
        if (synth_cmd->parsed()) return run_synth(synth_opts);
        if (report_cmd->parsed()) {
            return run_report(report_input, report_dopts, report_topts, report_cap,
                              report_max_state, report_ctm, report_sync_window, report_out);
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
