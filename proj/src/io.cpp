#include "sumex/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sumex {

namespace {

constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t fnv1a_bytes(const void* data, std::size_t len) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

} // namespace

std::string base64_encode(const std::vector<std::uint8_t>& data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= data.size(); i += 3) {
        const std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
        out += kB64[(v >> 18) & 63];
        out += kB64[(v >> 12) & 63];
        out += kB64[(v >> 6) & 63];
        out += kB64[v & 63];
    }
    const std::size_t rest = data.size() - i;
    if (rest == 1) {
        const std::uint32_t v = data[i] << 16;
        out += kB64[(v >> 18) & 63];
        out += kB64[(v >> 12) & 63];
        out += "==";
    } else if (rest == 2) {
        const std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8);
        out += kB64[(v >> 18) & 63];
        out += kB64[(v >> 12) & 63];
        out += kB64[(v >> 6) & 63];
        out += '=';
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    static const auto lookup = [] {
        std::array<int, 256> t{};
        t.fill(-1);
        for (int k = 0; k < 64; ++k) t[static_cast<unsigned char>(kB64[k])] = k;
        return t;
    }();
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    std::uint32_t acc = 0;
    int bits = 0;
    for (const char ch : text) {
        if (ch == '=' || ch == '\n' || ch == '\r') continue;
        const int v = lookup[static_cast<unsigned char>(ch)];
        if (v < 0) throw std::invalid_argument("invalid base64 input");
        acc = (acc << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xff));
        }
    }
    return out;
}

namespace {

std::vector<std::uint8_t> pack_bits(const std::vector<bool>& bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) bytes[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
    }
    return bytes;
}

bool bit_at(const std::vector<std::uint8_t>& bytes, std::size_t i) {
    return (bytes[i >> 3] >> (i & 7)) & 1u;
}

nlohmann::json feature_to_json(const FeatureFunction& f) {
    nlohmann::json j;
    j["column"] = f.column;
    j["op"] = to_string(f.op);
    if (f.op == FeatureOp::Eq) {
        j["category"] = f.category;
    } else {
        j["threshold"] = f.threshold;
    }
    return j;
}

FeatureFunction feature_from_json(const nlohmann::json& j) {
    FeatureFunction f;
    f.column = j.at("column").get<int>();
    const std::string op = j.at("op").get<std::string>();
    if (op == "<=") {
        f.op = FeatureOp::Le;
    } else if (op == ">=") {
        f.op = FeatureOp::Ge;
    } else if (op == "=") {
        f.op = FeatureOp::Eq;
    } else {
        throw std::invalid_argument("unknown feature operator '" + op + "'");
    }
    if (f.op == FeatureOp::Eq) {
        f.category = j.at("category").get<std::string>();
    } else {
        f.threshold = j.at("threshold").get<double>();
    }
    return f;
}

} // namespace

nlohmann::json dataset_to_json(const BinaryDataset& ds) {
    nlohmann::json j;
    j["format"] = "sumex-dataset";
    j["version"] = 1;
    j["rows"] = ds.n;
    j["columns"] = ds.column_names;
    nlohmann::json kinds = nlohmann::json::array();
    for (const auto k : ds.column_kinds)
        kinds.push_back(k == ColumnKind::Numeric ? "numeric" : "categorical");
    j["column_kinds"] = kinds;
    j["label_names"] = ds.label_names;
    nlohmann::json feats = nlohmann::json::array();
    for (const auto& f : ds.features) feats.push_back(feature_to_json(f));
    j["features"] = feats;
    j["obs_ids"] = ds.obs_ids;
    j["feature_hash"] = hex64(ds.feature_hash());

    std::vector<bool> labels(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i) labels[i] = ds.labels.test(i);
    j["labels_b64"] = base64_encode(pack_bits(labels));

    std::vector<bool> delta(ds.n * ds.feature_count());
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t p = 0; p < ds.feature_count(); ++p)
            delta[i * ds.feature_count() + p] = ds.columns[p].test(i);
    }
    j["delta_b64"] = base64_encode(pack_bits(delta));
    return j;
}

BinaryDataset dataset_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "sumex-dataset")
        throw std::invalid_argument("not a sumex dataset file");
    BinaryDataset ds;
    ds.n = j.at("rows").get<std::size_t>();
    ds.column_names = j.at("columns").get<std::vector<std::string>>();
    for (const auto& k : j.at("column_kinds"))
        ds.column_kinds.push_back(k.get<std::string>() == "numeric" ? ColumnKind::Numeric
                                                                    : ColumnKind::Categorical);
    const auto names = j.at("label_names").get<std::vector<std::string>>();
    if (names.size() != 2) throw std::invalid_argument("label_names must have two entries");
    ds.label_names = {names[0], names[1]};
    for (const auto& f : j.at("features")) ds.features.push_back(feature_from_json(f));
    ds.obs_ids = j.at("obs_ids").get<std::vector<std::int64_t>>();
    if (ds.obs_ids.size() != ds.n)
        throw std::invalid_argument("obs_ids length does not match row count");

    const auto label_bytes = base64_decode(j.at("labels_b64").get<std::string>());
    if (label_bytes.size() < (ds.n + 7) / 8)
        throw std::invalid_argument("label payload too short");
    ds.labels = BitVector(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i) {
        if (bit_at(label_bytes, i)) ds.labels.set(i);
    }

    const auto delta_bytes = base64_decode(j.at("delta_b64").get<std::string>());
    const std::size_t p_count = ds.features.size();
    if (delta_bytes.size() < (ds.n * p_count + 7) / 8)
        throw std::invalid_argument("delta payload too short");
    ds.columns.assign(p_count, BitVector(ds.n));
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t p = 0; p < p_count; ++p) {
            if (bit_at(delta_bytes, i * p_count + p)) ds.columns[p].set(i);
        }
    }

    if (j.contains("feature_hash") &&
        j.at("feature_hash").get<std::string>() != hex64(ds.feature_hash()))
        throw std::invalid_argument("dataset file feature hash mismatch");
    return ds;
}

void save_dataset(const BinaryDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << dataset_to_json(ds).dump(1) << "\n";
}

BinaryDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return dataset_from_json(j);
}

namespace {

std::uint64_t counts_checksum(const GlobalCounts& gc) {
    std::uint64_t h = fnv1a_bytes(&gc.rows, sizeof(gc.rows));
    for (const auto& pair : gc.counts) {
        h ^= fnv1a_bytes(pair.data(), sizeof(std::int64_t) * 2);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

void save_global_counts(const GlobalCounts& gc, const BinaryDataset& ds,
                        const std::string& path) {
    nlohmann::json j;
    j["format"] = "sumex-global-counts";
    j["version"] = 1;
    j["feature_hash"] = hex64(ds.feature_hash());
    j["rows"] = gc.rows;
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& pair : gc.counts) counts.push_back({pair[0], pair[1]});
    j["counts"] = counts;
    j["checksum"] = hex64(counts_checksum(gc));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

GlobalCounts load_global_counts(const std::string& path, const BinaryDataset& ds) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.value("format", "") != "sumex-global-counts")
        throw std::invalid_argument("not a sumex global-counts file");
    if (j.at("feature_hash").get<std::string>() != hex64(ds.feature_hash()))
        throw std::invalid_argument(
            "global-counts sidecar was built from a different binarization "
            "(feature hash mismatch); recompute it for this dataset");
    GlobalCounts gc;
    gc.rows = j.at("rows").get<std::int64_t>();
    for (const auto& pair : j.at("counts"))
        gc.counts.push_back({pair.at(0).get<std::int64_t>(), pair.at(1).get<std::int64_t>()});
    if (gc.counts.size() != ds.feature_count())
        throw std::invalid_argument("global-counts sidecar feature count mismatch");
    if (j.at("checksum").get<std::string>() != hex64(counts_checksum(gc)))
        throw std::invalid_argument("global-counts sidecar failed its checksum");
    return gc;
}

nlohmann::json explanation_to_json(const SummaryExplanation& expl, const BinaryDataset& meta,
                                   RenderStyle style) {
    nlohmann::json j;
    nlohmann::json clause = nlohmann::json::array();
    for (const int p : expl.clause.features) {
        const auto& f = meta.features.at(static_cast<std::size_t>(p));
        nlohmann::json c;
        c["column"] = meta.column_names.at(static_cast<std::size_t>(f.column));
        c["op"] = to_string(f.op);
        if (f.op == FeatureOp::Eq) {
            c["threshold"] = f.category;
        } else {
            c["threshold"] = f.threshold;
        }
        clause.push_back(c);
    }
    j["clause"] = clause;
    j["label"] = expl.label;
    j["support"] = expl.support;
    j["consistency"] = expl.consistency;
    j["complexity"] = expl.complexity;
    j["vacuous"] = expl.vacuous;
    j["scope"] = {{"tag", expl.scope == Scope::Local ? "local" : "global"},
                  {"size", expl.scope_size}};
    j["sentence"] = render(expl, meta, style);
    return j;
}

nlohmann::json solve_result_to_json(const SolveResult& res) {
    nlohmann::json j;
    j["status"] = to_string(res.status);
    j["objective"] = res.objective;
    j["nodes"] = res.nodes;
    j["wall_seconds"] = res.wall_seconds;
    if (res.clause) {
        j["clause"] = res.clause->features;
    } else {
        j["clause"] = nullptr;
    }
    return j;
}

nlohmann::json wcs_outcome_to_json(const WcsOutcome& outcome) {
    nlohmann::json j;
    j["chosen"] = solve_result_to_json(outcome.chosen);
    j["q_feasible"] = outcome.q_feasible;
    j["wall_seconds"] = outcome.wall_seconds;
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& cand : outcome.candidates) {
        nlohmann::json c;
        c["subproblem"] = cand.subproblem;
        c["status"] = to_string(cand.sub_status);
        if (cand.clause) {
            c["clause"] = cand.clause->features;
            c["sub_objective"] = cand.sub_objective;
            c["support_n"] = cand.support_n;
            c["consistency_n"] = cand.consistency_n;
        } else {
            c["clause"] = nullptr;
        }
        cands.push_back(c);
    }
    j["candidates"] = cands;
    return j;
}

nlohmann::json run_record_to_json(const RunRecord& rec) {
    nlohmann::json j;
    j["method"] = to_string(rec.method);
    j["local_size"] = rec.local_size;
    j["run"] = rec.run;
    j["target_id"] = rec.target_id;
    j["target_index"] = rec.target_index;
    j["status"] = to_string(rec.status);
    j["q_feasible"] = rec.q_feasible;
    j["seconds"] = rec.seconds;
    j["nodes"] = rec.nodes;
    if (rec.has_clause) {
        j["clause"] = rec.clause.features;
        j["local_support"] = rec.local_support;
        j["local_consistency"] = rec.local_consistency;
        j["global_support"] = rec.global_support;
        j["global_consistency"] = rec.global_consistency;
    } else {
        j["clause"] = nullptr;
    }
    return j;
}

namespace {

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    nlohmann::json methods = nlohmann::json::array();
    for (const auto m : config.methods) methods.push_back(to_string(m));
    j["methods"] = methods;
    j["sizes"] = config.local_sizes;
    j["runs"] = config.runs;
    j["q"] = config.q;
    j["max_complexity"] = config.max_complexity;
    j["time_limit_seconds"] = config.time_limit_seconds;
    j["seed"] = config.seed;
    j["dominance_pruning"] = config.dominance_pruning;
    j["mc_warm_start"] = config.mc_warm_start;
    j["wcs"] = {{"m", config.wcs.m},
                {"n_wcs", config.wcs.n_wcs},
                {"rho", config.wcs.rho},
                {"softmax_scale", config.wcs.softmax_scale},
                {"weighting", to_string(config.wcs.weighting)},
                {"sub_time_limit_seconds", config.wcs.sub_time_limit_seconds}};
    return j;
}

nlohmann::json cell_to_json(const CellAggregate& cell) {
    nlohmann::json j;
    j["method"] = to_string(cell.method);
    j["local_size"] = cell.local_size;
    j["runs"] = cell.runs;
    j["contributing"] = cell.contributing;
    j["timeouts"] = cell.timeouts;
    j["infeasible"] = cell.infeasible;
    j["q_infeasible"] = cell.q_infeasible;
    j["time_geomean"] = cell.time_geomean;
    if (cell.has_values) {
        j["local_support_geomean"] = cell.local_support_geomean;
        j["local_consistency_mean"] = cell.local_consistency_mean;
        j["global_support_geomean"] = cell.global_support_geomean;
        j["global_consistency_mean"] = cell.global_consistency_mean;
    } else {
        j["local_support_geomean"] = nullptr;
        j["local_consistency_mean"] = nullptr;
        j["global_support_geomean"] = nullptr;
        j["global_consistency_mean"] = nullptr;
    }
    return j;
}

} // namespace

nlohmann::json report_to_json(const BenchmarkReport& report) {
    nlohmann::json j;
    j["config"] = config_to_json(report.config);
    j["global_size"] = report.global_size;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : report.cells) cells.push_back(cell_to_json(cell));
    j["cells"] = cells;
    return j;
}

namespace {

void write_metric_csv(const BenchmarkReport& report, const std::string& path,
                      const std::string& metric) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "local_size";
    for (const auto m : report.config.methods) out << "," << to_string(m);
    out << "\n";
    for (const auto size : report.config.local_sizes) {
        out << size;
        for (const auto m : report.config.methods) {
            const CellAggregate* cell = report.cell(m, size);
            out << ",";
            if (!cell) continue;
            if (metric == "time") {
                out << format_double(cell->time_geomean, 4);
                if (cell->timeouts > 0) out << " (" << cell->timeouts << " capped)";
                continue;
            }
            if (!cell->has_values) {
                out << "NA";
                continue;
            }
            if (metric == "local_support") out << format_double(cell->local_support_geomean, 2);
            if (metric == "local_consistency")
                out << format_double(cell->local_consistency_mean, 4);
            if (metric == "global_support")
                out << format_double(cell->global_support_geomean, 2);
            if (metric == "global_consistency")
                out << format_double(cell->global_consistency_mean, 4);
        }
        out << "\n";
    }
}

} // namespace

void write_report_files(const BenchmarkReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/report.json");
        if (!out) throw std::runtime_error("cannot write report.json");
        out << report_to_json(report).dump(1) << "\n";
    }
    {
        std::ofstream out(dir + "/raw_runs.jsonl");
        if (!out) throw std::runtime_error("cannot write raw_runs.jsonl");
        for (const auto& rec : report.records) out << run_record_to_json(rec).dump() << "\n";
    }
    write_metric_csv(report, dir + "/time.csv", "time");
    write_metric_csv(report, dir + "/local_support.csv", "local_support");
    write_metric_csv(report, dir + "/local_consistency.csv", "local_consistency");
    write_metric_csv(report, dir + "/global_support.csv", "global_support");
    write_metric_csv(report, dir + "/global_consistency.csv", "global_consistency");

    if (report.config.methods.size() >= 2) {
        const RankTable table = rank_methods(report);
        std::ofstream out(dir + "/rankings.csv");
        if (!out) throw std::runtime_error("cannot write rankings.csv");
        out << "metric,method";
        for (const auto size : table.sizes) out << "," << size;
        out << "\n";
        for (std::size_t m = 0; m < table.metrics.size(); ++m) {
            for (const auto method : report.config.methods) {
                out << table.metrics[m] << "," << to_string(method);
                for (std::size_t s = 0; s < table.sizes.size(); ++s) {
                    out << ",";
                    for (const auto& entry : table.ranks[m][s]) {
                        if (entry.method == method) out << entry.rank;
                    }
                }
                out << "\n";
            }
        }
    }
}

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trimmed(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

Method parse_method(const std::string& v) {
    std::string lower = v;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "mc") return Method::MC;
    if (lower == "ms") return Method::MS;
    if (lower == "msqc") return Method::MSqC;
    if (lower == "rcs") return Method::RCS;
    if (lower == "wcs") return Method::WCS;
    throw std::invalid_argument("unknown method '" + v + "'");
}

PlantedCondition parse_condition(const std::string& text) {
    PlantedCondition cond;
    std::size_t pos;
    if ((pos = text.find("<=")) != std::string::npos) {
        cond.op = FeatureOp::Le;
    } else if ((pos = text.find(">=")) != std::string::npos) {
        cond.op = FeatureOp::Ge;
    } else {
        throw std::invalid_argument("condition '" + text + "' needs <= or >=");
    }
    std::string col = trimmed(text.substr(0, pos));
    if (!col.empty() && (col[0] == 'x' || col[0] == 'X')) col = col.substr(1);
    cond.column = std::stoi(col);
    cond.threshold = std::stod(trimmed(text.substr(pos + 2)));
    return cond;
}

} // namespace

BenchFileConfig parse_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);

    BenchFileConfig cfg;
    cfg.synth.rows = 10000;
    cfg.synth.numeric_columns = 8;
    cfg.synth.noise = 0.12;
    cfg.experiment.wcs.weighting = Weighting::SisGlobal;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));

        auto& exp = cfg.experiment;
        if (key == "dataset") {
            cfg.dataset_path = value;
        } else if (key == "global-counts") {
            cfg.global_counts_path = value;
        } else if (key == "synthetic") {
            cfg.synthetic = parse_bool(value);
        } else if (key == "synthetic.rows") {
            cfg.synth.rows = std::stoull(value);
        } else if (key == "synthetic.cols") {
            cfg.synth.numeric_columns = std::stoi(value);
        } else if (key == "synthetic.noise") {
            cfg.synth.noise = std::stod(value);
        } else if (key == "synthetic.range") {
            cfg.synth.value_range = std::stod(value);
        } else if (key == "synthetic.seed") {
            cfg.synth_seed = std::stoull(value);
        } else if (key == "synthetic.k") {
            cfg.synth_thresholds = std::stoi(value);
        } else if (key == "synthetic.rule") {
            for (const auto& cond : split_list(value, '&'))
                cfg.synth.rule.push_back(parse_condition(cond));
        } else if (key == "methods") {
            for (const auto& m : split_list(value, ',')) exp.methods.push_back(parse_method(m));
        } else if (key == "sizes") {
            for (const auto& s : split_list(value, ','))
                exp.local_sizes.push_back(std::stoull(s));
        } else if (key == "runs") {
            exp.runs = std::stoi(value);
        } else if (key == "q") {
            exp.q = std::stod(value);
        } else if (key == "max-complexity") {
            exp.max_complexity = std::stoi(value);
        } else if (key == "time-limit") {
            exp.time_limit_seconds = std::stod(value);
        } else if (key == "seed") {
            exp.seed = std::stoull(value);
        } else if (key == "dominance") {
            exp.dominance_pruning = parse_bool(value);
        } else if (key == "warm-start") {
            exp.mc_warm_start = parse_bool(value);
        } else if (key == "wcs.m") {
            exp.wcs.m = std::stoi(value);
        } else if (key == "wcs.n") {
            exp.wcs.n_wcs = std::stoi(value);
        } else if (key == "wcs.rho") {
            exp.wcs.rho = std::stod(value);
        } else if (key == "wcs.scale") {
            exp.wcs.softmax_scale = std::stod(value);
        } else if (key == "wcs.sub-time-limit") {
            exp.wcs.sub_time_limit_seconds = std::stod(value);
        } else if (key == "wcs.weighting") {
            if (value == "global") {
                exp.wcs.weighting = Weighting::SisGlobal;
            } else if (value == "local") {
                exp.wcs.weighting = Weighting::SisLocal;
            } else if (value == "uniform") {
                exp.wcs.weighting = Weighting::Uniform;
            } else {
                throw std::invalid_argument("unknown weighting '" + value + "'");
            }
        } else {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }

    if (cfg.dataset_path.empty() && !cfg.synthetic)
        throw std::invalid_argument(path + ": either dataset= or synthetic=true is required");
    if (cfg.experiment.methods.empty())
        throw std::invalid_argument(path + ": methods= is required");
    if (cfg.experiment.local_sizes.empty())
        throw std::invalid_argument(path + ": sizes= is required");
    return cfg;
}

} // namespace sumex
