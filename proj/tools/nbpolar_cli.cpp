// Command-line front end. Every stochastic command takes --seed
// (default 0) and emits a config hash so runs can be reproduced exactly.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nbpolar/distance.hpp"
#include "nbpolar/json_io.hpp"
#include "nbpolar/kernel_search.hpp"
#include "nbpolar/sim.hpp"

using namespace nbpolar;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

json load_spec(const std::string& path) {
    return path.empty() ? json::object() : json::parse(read_file(path));
}

template <typename T>
void fill(const CLI::Option* opt, const json& spec, const char* key, T& value) {
    if (opt->count() == 0 && spec.contains(key)) value = spec.at(key).get<T>();
}

std::string fmt3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

SignalSet resolve_set(const std::string& name, int q) {
    if (!name.empty()) return signal_set_by_name(name);
    if (q <= 0) throw UsageError("need --set or --q");
    return make_psk(q);
}

KernelSchedule resolve_schedule(const std::string& desc, int q, int n) {
    const std::string prefix = "channel-stage:";
    if (desc.rfind(prefix, 0) == 0)
        return channel_stage_schedule(builtin_kernel(desc.substr(prefix.size()), q), n);
    if (desc.find(',') != std::string::npos) {
        KernelSchedule s;
        std::stringstream ss(desc);
        std::string name;
        while (std::getline(ss, name, ',')) s.stages.push_back(builtin_kernel(name, q));
        if (s.size() != n)
            throw UsageError("schedule lists " + std::to_string(s.size()) + " stages, need " +
                             std::to_string(n));
        s.check();
        return s;
    }
    return uniform_schedule(builtin_kernel(desc, q), n);
}

std::string csv_header(const std::string& descriptor, std::uint64_t seed) {
    return "# config " + config_hash(descriptor) + " seed " + std::to_string(seed) + "\n";
}

std::size_t info_count_for(int q, std::size_t block_length) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(block_length) /
                                               std::log2(static_cast<double>(q))));
}

// ------------------------------------------------------------------

int cmd_analyze(const std::string& kernel_name, const std::string& set_name, int q,
                const std::string& json_out) {
    const Kernel k = builtin_kernel(kernel_name, q);
    const SignalSet set = resolve_set(set_name, k.q());
    if (set.q != k.q()) throw std::runtime_error("kernel q != signal set q");

    const DistanceSpectrum good = good_channel_spectrum(k, set);
    const DistanceSpectrum bad = bad_channel_spectrum(k, set);
    const bool equidistant = is_equidistant(good, set.q);
    const ConservationResult cons = conservation_check(k, set);
    const double bound = equidistant_dmin_bound(set);

    const auto spectrum_line = [](const DistanceSpectrum& s) {
        std::string line;
        for (const auto& [d, mult] : s.entries) {
            if (!line.empty()) line += "  ";
            line += "d=" + fmt3(d) + " n=" + std::to_string(mult);
        }
        if (!s.uniform) line += "  (non-uniform, reference (0,0))";
        return line;
    };
    std::string mults;
    for (const auto& [d, mult] : good.entries) {
        if (!mults.empty()) mults += ",";
        mults += std::to_string(mult);
    }

    std::ostringstream os;
    os << "kernel " << (k.label().empty() ? kernel_name : k.label()) << "  q " << set.q
       << "  set " << set.label << "\n"
       << "good:  " << spectrum_line(good) << "\n"
       << "bad:   " << spectrum_line(bad) << "\n"
       << "equidistant: " << (equidistant ? "yes" : "no") << "\n"
       << "conservation: " << (cons.holds ? "holds" : "violated") << " (expected total "
       << fmt3(cons.expected_total) << ", max deviation " << cons.max_deviation << ")\n"
       << "d_min bound: " << fmt3(bound) << (good.dmin() >= bound - 1e-9 ? " (attained)" : "")
       << "\n"
       << "row: q=" << set.q << ": d_min " << fmt3(good.dmin()) << ", N(d) " << mults << "\n";
    std::cout << os.str();

    json j;
    j["kernel"] = json::parse(to_json(k));
    j["set"] = json::parse(to_json(set));
    j["good"] = json::parse(to_json(good));
    j["bad"] = json::parse(to_json(bad));
    j["equidistant"] = equidistant;
    j["conservation"] = {{"holds", cons.holds},
                         {"group_matched", cons.group_matched},
                         {"expected_total", cons.expected_total},
                         {"max_deviation", cons.max_deviation}};
    j["dmin_bound"] = bound;
    emit(json_out, j.dump(2) + "\n");
    return 0;
}

int cmd_search(int q, const std::string& set_name, bool full_space, const std::string& out) {
    const SignalSet set = resolve_set(set_name, q);
    if (q > 0 && set.q != q) throw std::runtime_error("--q disagrees with the signal set");
    emit(out, to_json(search_permutations(set, full_space)) + "\n");
    return 0;
}

struct Construction {
    CodeConfig cfg;
    ReliabilityProfile profile;
    std::string descriptor;
};

Construction construct_code(int q, const SignalSet& set, const std::string& schedule_desc,
                            int stages, double snr_db, std::uint64_t trials,
                            std::uint64_t seed) {
    const KernelSchedule sched = resolve_schedule(schedule_desc, q, stages);
    const CodeConfig open = make_code_config(sched);
    const ReliabilityProfile profile =
        estimate_reliabilities(open, set, NoiseModel{set.es, snr_db}, trials, seed);
    const std::size_t K = info_count_for(q, open.block_length);
    Construction result;
    result.cfg = make_code_config(sched, select_frozen_set(profile, K));
    result.profile = profile;
    result.descriptor = to_json(result.cfg) + "|" + set.label + "|design" +
                        std::to_string(snr_db) + "|trials" + std::to_string(trials);
    return result;
}

int cmd_construct(int q, const std::string& set_name, const std::string& schedule_desc,
                  int stages, double snr_db, std::uint64_t trials, std::uint64_t seed,
                  const std::string& out) {
    const SignalSet set = resolve_set(set_name, q);
    const Construction c = construct_code(set.q, set, schedule_desc, stages, snr_db, trials, seed);

    std::ostringstream csv;
    csv << csv_header(c.descriptor, seed) << "index,error_rate\n";
    for (std::size_t i = 0; i < c.profile.error_rate.size(); ++i)
        csv << i << "," << c.profile.error_rate[i] << "\n";
    emit(out.empty() ? "" : out + ".reliability.csv", csv.str());
    emit(out.empty() ? "" : out + ".code.json", to_json(c.cfg) + "\n");
    std::cout << "# frozen " << c.cfg.frozen.size() << " of " << c.cfg.block_length << " (K="
              << c.cfg.info_count() << ")\n";
    return 0;
}

int cmd_simulate(int q, const std::string& set_name, const std::string& schedule_desc,
                 int stages, const std::string& code_path, const std::vector<double>& snr_grid,
                 std::uint64_t trials, double design_snr_db, std::uint64_t construct_trials,
                 std::uint64_t seed, const std::string& out) {
    if (snr_grid.empty()) throw UsageError("--snr grid must be non-empty");
    CodeConfig cfg;
    std::string descriptor;
    SignalSet set = resolve_set(set_name, q);
    if (!code_path.empty()) {
        cfg = code_config_from_json(read_file(code_path));
        descriptor = to_json(cfg) + "|" + set.label;
    } else {
        const Construction c =
            construct_code(set.q, set, schedule_desc, stages, design_snr_db, construct_trials, seed);
        cfg = c.cfg;
        descriptor = c.descriptor;
    }
    if (set.q != cfg.q) throw std::runtime_error("signal set q != code q");

    std::ostringstream csv;
    csv << csv_header(descriptor + "|trials" + std::to_string(trials), seed)
        << "snr_db,trials,frame_errors,fer,fer_ci_low,fer_ci_high\n";
    for (double snr_db : snr_grid) {
        const SimulationReport r = run_fer(cfg, set, NoiseModel{set.es, snr_db}, trials, seed);
        csv << snr_db << "," << r.trials << "," << r.frame_errors << "," << r.fer << ","
            << r.fer_ci_low << "," << r.fer_ci_high << "\n";
    }
    emit(out, csv.str());
    return 0;
}

int cmd_bounds(const std::string& kernel_name, const std::string& set_name, int q,
               const std::vector<double>& snr_grid, const std::string& out) {
    if (snr_grid.empty()) throw UsageError("--snr grid must be non-empty");
    const Kernel k = builtin_kernel(kernel_name, q);
    const SignalSet set = resolve_set(set_name, k.q());
    if (set.q != k.q()) throw std::runtime_error("kernel q != signal set q");
    const DistanceSpectrum good = good_channel_spectrum(k, set);

    const bool compare = set.q == 8;
    const std::vector<BoundComparisonRow> rows =
        compare ? bound_comparison_almost_equidistant(snr_grid) : std::vector<BoundComparisonRow>{};

    std::ostringstream csv;
    csv << csv_header(to_json(k) + "|" + set.label, 0) << "snr_db,union_bound";
    if (compare) csv << ",almost_equidistant_bound,equidistant_bound";
    csv << "\n";
    for (std::size_t i = 0; i < snr_grid.size(); ++i) {
        csv << snr_grid[i] << "," << union_bound(good, db_to_linear(snr_grid[i]), set.es);
        if (compare) csv << "," << rows[i].almost_equidistant << "," << rows[i].equidistant;
        csv << "\n";
    }
    emit(out, csv.str());
    return 0;
}

int cmd_polarization_speed(int q, const std::string& set_name,
                           const std::vector<std::string>& variants, int stages, double snr_db,
                           std::uint64_t trials, std::uint64_t seed, const std::string& out) {
    const SignalSet set = resolve_set(set_name, q);
    const auto schedule_for = [&](const std::string& variant) -> KernelSchedule {
        if (variant == "all-proposed") return uniform_schedule(proposed_kernel(set.q), stages);
        if (variant == "all-sasoglu") return uniform_schedule(sasoglu_kernel(set.q), stages);
        if (variant == "all-standard") return uniform_schedule(standard_kernel(set.q), stages);
        if (variant == "channel-stage-only-proposed")
            return channel_stage_schedule(proposed_kernel(set.q), stages);
        if (variant == "channel-stage-only-sasoglu")
            return channel_stage_schedule(sasoglu_kernel(set.q), stages);
        throw UsageError("unknown variant: " + variant);
    };

    for (const std::string& variant : variants) {
        const CodeConfig cfg = make_code_config(schedule_for(variant));
        const ReliabilityProfile p =
            estimate_reliabilities(cfg, set, NoiseModel{set.es, snr_db}, trials, seed);
        std::vector<double> sorted = p.error_rate;
        std::sort(sorted.begin(), sorted.end());

        std::ostringstream csv;
        csv << csv_header(to_json(cfg) + "|" + set.label + "|" + variant, seed)
            << "index,error_rate,sorted_error_rate\n";
        for (std::size_t i = 0; i < p.error_rate.size(); ++i)
            csv << i << "," << p.error_rate[i] << "," << sorted[i] << "\n";
        emit(out.empty() ? "" : out + "." + variant + ".csv", csv.str());
        std::cout << "variant " << variant << " unpolarized " << unpolarized_count(p) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-binary polar code toolkit"};
    app.require_subcommand(1);

    std::string spec_path, kernel_name, set_name, schedule_desc = "standard", code_path, out;
    std::string json_out;
    int q = 0, stages = 8;
    bool full_space = false;
    double snr_db = 2.0, design_snr_db = 2.0;
    std::uint64_t trials = 10000, construct_trials = 100000, seed = 0;
    std::vector<double> snr_grid;
    std::vector<std::string> variants{"all-proposed", "all-sasoglu", "all-standard"};

    CLI::App* analyze = app.add_subcommand("analyze-kernel", "distance analysis of one kernel");
    auto* an_kernel = analyze->add_option("--kernel", kernel_name, "kernel name");
    auto* an_set = analyze->add_option("--set", set_name, "signal set (psk<q> or rotated4)");
    auto* an_q = analyze->add_option("--q", q, "alphabet size hint");
    analyze->add_option("--json", json_out, "JSON output path (default stdout)");
    analyze->add_option("--spec", spec_path, "JSON spec file supplying defaults");

    CLI::App* search = app.add_subcommand("search-kernel", "exhaustive permutation search");
    auto* se_q = search->add_option("--q", q, "alphabet size");
    auto* se_set = search->add_option("--set", set_name, "signal set");
    search->add_flag("--full-space", full_space, "search all q! permutations");
    search->add_option("--out", out, "report path (default stdout)");
    search->add_option("--spec", spec_path, "JSON spec file supplying defaults");

    CLI::App* construct = app.add_subcommand("construct", "Monte-Carlo code construction");
    auto* co_q = construct->add_option("--q", q, "alphabet size");
    auto* co_set = construct->add_option("--set", set_name, "signal set");
    auto* co_sched = construct->add_option("--schedule", schedule_desc,
                                           "kernel name, comma list, or channel-stage:<name>");
    auto* co_stages = construct->add_option("--stages", stages, "number of stages n, N = 2^n");
    auto* co_snr = construct->add_option("--design-snr-db", snr_db, "design SNR in dB");
    auto* co_trials = construct->add_option("--trials", trials, "construction trials");
    auto* co_seed = construct->add_option("--seed", seed, "master seed");
    construct->add_option("--out", out, "output prefix (default stdout)");
    construct->add_option("--spec", spec_path, "JSON spec file supplying defaults");

    CLI::App* simulate = app.add_subcommand("simulate", "FER sweep over an SNR grid");
    auto* si_q = simulate->add_option("--q", q, "alphabet size");
    auto* si_set = simulate->add_option("--set", set_name, "signal set");
    auto* si_sched = simulate->add_option("--schedule", schedule_desc, "schedule description");
    auto* si_stages = simulate->add_option("--stages", stages, "number of stages n, N = 2^n");
    simulate->add_option("--code", code_path, "code config JSON (skips construction)");
    auto* si_snr = simulate->add_option("--snr", snr_grid, "SNR grid in dB");
    auto* si_trials = simulate->add_option("--trials", trials, "frames per grid point");
    auto* si_design = simulate->add_option("--design-snr-db", design_snr_db, "construction SNR");
    auto* si_ctrials =
        simulate->add_option("--construct-trials", construct_trials, "construction trials");
    auto* si_seed = simulate->add_option("--seed", seed, "master seed");
    simulate->add_option("--out", out, "CSV path (default stdout)");
    simulate->add_option("--spec", spec_path, "JSON spec file supplying defaults");

    CLI::App* bounds = app.add_subcommand("bounds", "union-bound curves");
    auto* bo_kernel = bounds->add_option("--kernel", kernel_name, "kernel name");
    auto* bo_set = bounds->add_option("--set", set_name, "signal set");
    auto* bo_q = bounds->add_option("--q", q, "alphabet size hint");
    auto* bo_snr = bounds->add_option("--snr", snr_grid, "SNR grid in dB");
    bounds->add_option("--out", out, "CSV path (default stdout)");
    bounds->add_option("--spec", spec_path, "JSON spec file supplying defaults");

    CLI::App* pol = app.add_subcommand("polarization-speed", "reliability curves per variant");
    auto* po_q = pol->add_option("--q", q, "alphabet size");
    auto* po_set = pol->add_option("--set", set_name, "signal set");
    auto* po_variants = pol->add_option("--variants", variants, "schedule variants");
    auto* po_stages = pol->add_option("--stages", stages, "number of stages n, N = 2^n");
    auto* po_snr = pol->add_option("--snr-db", snr_db, "operating SNR in dB");
    auto* po_trials = pol->add_option("--trials", trials, "trials per variant");
    auto* po_seed = pol->add_option("--seed", seed, "master seed");
    pol->add_option("--out", out, "output prefix (default stdout)");
    pol->add_option("--spec", spec_path, "JSON spec file supplying defaults");

    try {
        app.parse(argc, argv);
        const json spec = load_spec(spec_path);

        if (*analyze) {
            fill(an_kernel, spec, "kernel", kernel_name);
            fill(an_set, spec, "set", set_name);
            fill(an_q, spec, "q", q);
            if (kernel_name.empty()) throw UsageError("analyze-kernel needs --kernel");
            return cmd_analyze(kernel_name, set_name, q, json_out);
        }
        if (*search) {
            fill(se_q, spec, "q", q);
            fill(se_set, spec, "set", set_name);
            if (q <= 0 && set_name.empty()) throw UsageError("search-kernel needs --q or --set");
            return cmd_search(q, set_name, full_space, out);
        }
        if (*construct) {
            fill(co_q, spec, "q", q);
            fill(co_set, spec, "set", set_name);
            fill(co_sched, spec, "schedule", schedule_desc);
            fill(co_stages, spec, "stages", stages);
            fill(co_snr, spec, "design_snr_db", snr_db);
            fill(co_trials, spec, "trials", trials);
            fill(co_seed, spec, "seed", seed);
            return cmd_construct(q, set_name, schedule_desc, stages, snr_db, trials, seed, out);
        }
        if (*simulate) {
            fill(si_q, spec, "q", q);
            fill(si_set, spec, "set", set_name);
            fill(si_sched, spec, "schedule", schedule_desc);
            fill(si_stages, spec, "stages", stages);
            fill(si_snr, spec, "snr", snr_grid);
            fill(si_trials, spec, "trials", trials);
            fill(si_design, spec, "design_snr_db", design_snr_db);
            fill(si_ctrials, spec, "construct_trials", construct_trials);
            fill(si_seed, spec, "seed", seed);
            return cmd_simulate(q, set_name, schedule_desc, stages, code_path, snr_grid, trials,
                                design_snr_db, construct_trials, seed, out);
        }
        if (*bounds) {
            fill(bo_kernel, spec, "kernel", kernel_name);
            fill(bo_set, spec, "set", set_name);
            fill(bo_q, spec, "q", q);
            fill(bo_snr, spec, "snr", snr_grid);
            if (kernel_name.empty()) throw UsageError("bounds needs --kernel");
            return cmd_bounds(kernel_name, set_name, q, snr_grid, out);
        }
        if (*pol) {
            fill(po_q, spec, "q", q);
            fill(po_set, spec, "set", set_name);
            fill(po_variants, spec, "variants", variants);
            fill(po_stages, spec, "stages", stages);
            fill(po_snr, spec, "snr_db", snr_db);
            fill(po_trials, spec, "trials", trials);
            fill(po_seed, spec, "seed", seed);
            return cmd_polarization_speed(q, set_name, variants, stages, snr_db, trials, seed,
                                          out);
        }
        throw UsageError("no subcommand");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
