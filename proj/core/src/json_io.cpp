#include "nbpolar/json_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace nbpolar {

using nlohmann::json;

std::string to_json(const SignalSet& set) {
    json j;
    j["q"] = set.q;
    j["es"] = set.es;
    if (!set.label.empty()) j["label"] = set.label;
    json pts = json::array();
    for (const auto& p : set.points) pts.push_back({p.real(), p.imag()});
    j["points"] = pts;
    return j.dump(2);
}

SignalSet signal_set_from_json(const std::string& text) {
    const json j = json::parse(text);
    SignalSet set;
    set.q = j.at("q").get<int>();
    set.es = j.at("es").get<double>();
    set.label = j.value("label", "");
    for (const auto& p : j.at("points"))
        set.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (static_cast<int>(set.points.size()) != set.q)
        throw std::invalid_argument("signal set JSON: point count != q");
    return set;
}

std::string to_json(const Kernel& k) {
    json j;
    j["q"] = k.q();
    j["label"] = k.label();
    json rows = json::array();
    for (int u1 = 0; u1 < k.q(); ++u1) {
        json row = json::array();
        for (int u2 = 0; u2 < k.q(); ++u2) row.push_back(k(u1, u2));
        rows.push_back(row);
    }
    j["table"] = rows;
    return j.dump(2);
}

Kernel kernel_from_json(const std::string& text) {
    const json j = json::parse(text);
    const int q = j.at("q").get<int>();
    const std::string label = j.value("label", "");
    if (j.contains("pi")) return kernel_from_permutation(q, j.at("pi").get<std::vector<int>>(), label);
    std::vector<std::vector<int>> table;
    for (const auto& row : j.at("table")) table.push_back(row.get<std::vector<int>>());
    if (static_cast<int>(table.size()) != q)
        throw std::invalid_argument("kernel JSON: table size != q");
    return validate_kernel(table, label);
}

std::string to_json(const DistanceSpectrum& s) {
    json j;
    j["kind"] = s.kind == ChannelKind::Good ? "good" : "bad";
    j["uniform"] = s.uniform;
    j["total_d"] = s.total_d;
    json entries = json::array();
    for (const auto& [d, n] : s.entries) entries.push_back({{"d", d}, {"n", n}});
    j["entries"] = entries;
    return j.dump(2);
}

DistanceSpectrum spectrum_from_json(const std::string& text) {
    const json j = json::parse(text);
    DistanceSpectrum s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "good") s.kind = ChannelKind::Good;
    else if (kind == "bad") s.kind = ChannelKind::Bad;
    else throw std::invalid_argument("spectrum JSON: kind must be good or bad");
    s.uniform = j.value("uniform", true);
    for (const auto& e : j.at("entries"))
        s.entries.emplace_back(e.at("d").get<double>(), e.at("n").get<int>());
    for (const auto& [d, n] : s.entries) s.total_d += n * d * d;
    return s;
}

std::string to_json(const CodeConfig& cfg) {
    json j;
    j["q"] = cfg.q;
    j["N"] = cfg.block_length;
    json stages = json::array();
    for (const Kernel& k : cfg.schedule.stages) stages.push_back(k.label());
    j["stages"] = stages;
    j["frozen"] = cfg.frozen;
    return j.dump(2);
}

CodeConfig code_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    const int q = j.at("q").get<int>();
    KernelSchedule schedule;
    for (const auto& name : j.at("stages"))
        schedule.stages.push_back(builtin_kernel(name.get<std::string>(), q));
    CodeConfig cfg = make_code_config(schedule, j.value("frozen", std::vector<int>{}));
    if (cfg.q != q) throw std::invalid_argument("code config JSON: q mismatch");
    if (cfg.block_length != j.at("N").get<std::size_t>())
        throw std::invalid_argument("code config JSON: N != 2^(stage count)");
    return cfg;
}

std::string to_json(const SearchReport& report) {
    json j;
    j["q"] = report.q;
    j["set"] = report.set_label;
    j["objective"] = report.objective;
    j["search_space_size"] = report.search_space_size;
    j["equidistant_found"] = report.equidistant_found;
    j["best_permutations"] = report.best_permutations;
    j["best_spectrum"] = json::parse(to_json(report.best_spectrum));
    return j.dump(2);
}

std::string to_json(const SimulationReport& r) {
    json j;
    j["config"] = r.config_label;
    j["snr_db"] = r.snr_db;
    j["trials"] = r.trials;
    j["frame_errors"] = r.frame_errors;
    j["symbol_errors"] = r.symbol_errors;
    j["fer"] = r.fer;
    j["ser"] = r.ser;
    j["fer_ci95"] = {r.fer_ci_low, r.fer_ci_high};
    j["ser_ci95"] = {r.ser_ci_low, r.ser_ci_high};
    j["seed"] = r.seed;
    j["wall_time_seconds"] = r.wall_time_seconds;
    return j.dump(2);
}

std::string to_json(const ReliabilityProfile& p) {
    json j;
    j["trials"] = p.trials;
    j["design_snr_db"] = p.design_snr_db;
    j["error_rate"] = p.error_rate;
    return j.dump(2);
}

std::string config_hash(const std::string& canonical_dump) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical_dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace nbpolar
