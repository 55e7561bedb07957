#include "sumex/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sumex/rng.hpp"

namespace sumex {

const char* to_string(FeatureOp op) {
    switch (op) {
        case FeatureOp::Le: return "<=";
        case FeatureOp::Ge: return ">=";
        case FeatureOp::Eq: return "=";
    }
    return "?";
}

bool RawDataset::evaluate(const FeatureFunction& f, std::size_t i) const {
    const auto c = static_cast<std::size_t>(f.column);
    if (missing[c][i]) return false;
    switch (f.op) {
        case FeatureOp::Le: return numeric[c][i] <= f.threshold;
        case FeatureOp::Ge: return numeric[c][i] >= f.threshold;
        case FeatureOp::Eq: return categorical[c][i] == f.category;
    }
    return false;
}

std::optional<std::size_t> BinaryDataset::index_of(std::int64_t obs_id) const {
    for (std::size_t i = 0; i < obs_ids.size(); ++i) {
        if (obs_ids[i] == obs_id) return i;
    }
    return std::nullopt;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    return fnv1a(h, s.data(), s.size());
}

} // namespace

std::uint64_t BinaryDataset::feature_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& name : column_names) h = fnv1a(h, name);
    for (const auto& f : features) {
        const std::int64_t col = f.column;
        h = fnv1a(h, &col, sizeof(col));
        h = fnv1a(h, to_string(f.op), 1);
        if (f.op == FeatureOp::Eq) {
            h = fnv1a(h, f.category);
        } else {
            h = fnv1a(h, &f.threshold, sizeof(f.threshold));
        }
    }
    return h;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

} // namespace

RawDataset load_raw(const std::string& path, const FormatDescriptor& desc) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    const auto header = split_csv_line(line);

    int outcome_col = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == desc.outcome_column) outcome_col = static_cast<int>(c);
    }
    if (outcome_col < 0)
        throw std::runtime_error(path + ": outcome column '" + desc.outcome_column + "' not found");

    std::vector<std::vector<std::string>> cells(header.size());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        for (std::size_t c = 0; c < header.size(); ++c)
            cells[c].push_back(std::move(fields[c]));
    }
    const std::size_t n = cells.empty() ? 0 : cells[0].size();

    RawDataset raw;
    raw.outcome.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& tok = cells[static_cast<std::size_t>(outcome_col)][i];
        int y;
        if (!desc.true_token.empty() && tok == desc.true_token) {
            y = 1;
        } else if (!desc.false_token.empty() && tok == desc.false_token) {
            y = 0;
        } else if (tok == "0" || tok == "1") {
            y = tok == "1" ? 1 : 0;
        } else {
            throw std::runtime_error(path + ": non-binary outcome value '" + tok + "'");
        }
        raw.outcome.push_back(y);
    }
    raw.label_names = {desc.false_token.empty() ? "0" : desc.false_token,
                       desc.true_token.empty() ? "1" : desc.true_token};
    if (!desc.label_names[0].empty()) raw.label_names[0] = desc.label_names[0];
    if (!desc.label_names[1].empty()) raw.label_names[1] = desc.label_names[1];

    const std::set<std::string> missing(desc.missing_tokens.begin(), desc.missing_tokens.end());
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (static_cast<int>(c) == outcome_col) continue;
        bool numeric = true;
        for (const auto& tok : cells[c]) {
            double v;
            if (!missing.count(tok) && !tok.empty() && !parse_double(tok, v)) {
                numeric = false;
                break;
            }
        }
        raw.column_names.push_back(header[c]);
        raw.kinds.push_back(numeric ? ColumnKind::Numeric : ColumnKind::Categorical);
        std::vector<double> nums;
        std::vector<std::string> toks;
        std::vector<std::uint8_t> miss(n, 0);
        if (numeric) {
            nums.resize(n, std::nan(""));
            for (std::size_t i = 0; i < n; ++i) {
                const auto& tok = cells[c][i];
                if (missing.count(tok) || tok.empty()) {
                    miss[i] = 1;
                } else {
                    parse_double(tok, nums[i]);
                }
            }
        } else {
            toks.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const auto& tok = cells[c][i];
                if (missing.count(tok) || tok.empty()) {
                    miss[i] = 1;
                } else {
                    toks[i] = tok;
                }
            }
        }
        raw.numeric.push_back(std::move(nums));
        raw.categorical.push_back(std::move(toks));
        raw.missing.push_back(std::move(miss));
    }
    return raw;
}

BinaryDataset apply_features(const RawDataset& raw, const std::vector<FeatureFunction>& features) {
    BinaryDataset ds;
    ds.n = raw.rows();
    ds.column_names = raw.column_names;
    ds.column_kinds = raw.kinds;
    ds.label_names = raw.label_names;
    ds.features = features;
    ds.labels = BitVector(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i) {
        if (raw.outcome[i] != 0 && raw.outcome[i] != 1)
            throw std::invalid_argument("outcome values must be 0 or 1");
        if (raw.outcome[i]) ds.labels.set(i);
    }
    ds.columns.reserve(features.size());
    for (const auto& f : features) {
        if (f.column < 0 || static_cast<std::size_t>(f.column) >= raw.cols())
            throw std::invalid_argument("feature references unknown column");
        const bool cat_col = raw.kinds[static_cast<std::size_t>(f.column)] == ColumnKind::Categorical;
        if ((f.op == FeatureOp::Eq) != cat_col)
            throw std::invalid_argument("feature operator does not match column kind");
        BitVector col(ds.n);
        for (std::size_t i = 0; i < ds.n; ++i) {
            if (raw.evaluate(f, i)) col.set(i);
        }
        ds.columns.push_back(std::move(col));
    }
    ds.obs_ids.resize(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i) ds.obs_ids[i] = static_cast<std::int64_t>(i);
    return ds;
}

namespace {

bool degenerate(const BitVector& col) {
    const auto c = col.count();
    return c == 0 || c == col.size();
}

} // namespace

BinaryDataset binarize(const RawDataset& raw, const BinarizeScheme& scheme,
                       std::vector<std::string>* warnings) {
    if (scheme.thresholds_per_column < 1)
        throw std::invalid_argument("thresholds_per_column must be >= 1");

    std::vector<FeatureFunction> candidates;
    for (std::size_t c = 0; c < raw.cols(); ++c) {
        if (raw.kinds[c] == ColumnKind::Numeric) {
            std::vector<double> vals;
            for (std::size_t i = 0; i < raw.rows(); ++i) {
                if (!raw.missing[c][i]) vals.push_back(raw.numeric[c][i]);
            }
            std::sort(vals.begin(), vals.end());
            std::vector<double> cuts;
            const int k = scheme.thresholds_per_column;
            for (int j = 1; j <= k && !vals.empty(); ++j) {
                const double phi = static_cast<double>(j) / (k + 1);
                const auto idx = static_cast<std::size_t>(
                    std::floor(phi * static_cast<double>(vals.size() - 1)));
                cuts.push_back(vals[idx]);
            }
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            for (const double t : cuts) {
                candidates.push_back({static_cast<int>(c), FeatureOp::Le, t, {}});
                candidates.push_back({static_cast<int>(c), FeatureOp::Ge, t, {}});
            }
        } else {
            std::set<std::string> values;
            for (std::size_t i = 0; i < raw.rows(); ++i) {
                if (!raw.missing[c][i]) values.insert(raw.categorical[c][i]);
            }
            for (const auto& v : values)
                candidates.push_back({static_cast<int>(c), FeatureOp::Eq, 0.0, v});
        }
    }

    BinaryDataset full = apply_features(raw, candidates);

    // Filter: drop degenerate columns, then collapse identical delta columns
    // within the same (raw column, operator), keeping the loosest threshold.
    std::vector<char> keep(candidates.size(), 1);
    if (scheme.drop_degenerate) {
        for (std::size_t p = 0; p < candidates.size(); ++p) {
            if (degenerate(full.columns[p])) keep[p] = 0;
        }
    }
    if (scheme.dedup) {
        std::map<std::pair<int, int>, std::vector<std::size_t>> groups;
        for (std::size_t p = 0; p < candidates.size(); ++p) {
            if (!keep[p] || candidates[p].op == FeatureOp::Eq) continue;
            groups[{candidates[p].column, static_cast<int>(candidates[p].op)}].push_back(p);
        }
        for (auto& [key, members] : groups) {
            for (std::size_t a = 0; a < members.size(); ++a) {
                if (!keep[members[a]]) continue;
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    if (!keep[members[b]]) continue;
                    if (full.columns[members[a]] == full.columns[members[b]]) {
                        // loosest = larger threshold for <=, smaller for >=
                        const bool le = candidates[members[a]].op == FeatureOp::Le;
                        const double ta = candidates[members[a]].threshold;
                        const double tb = candidates[members[b]].threshold;
                        const bool a_loosest = le ? ta >= tb : ta <= tb;
                        keep[a_loosest ? members[b] : members[a]] = 0;
                        if (!a_loosest) break;
                    }
                }
            }
        }
    }

    BinaryDataset ds;
    ds.n = full.n;
    ds.column_names = full.column_names;
    ds.column_kinds = full.column_kinds;
    ds.label_names = full.label_names;
    ds.labels = full.labels;
    ds.obs_ids = full.obs_ids;
    std::vector<std::size_t> per_column(raw.cols(), 0);
    for (std::size_t p = 0; p < candidates.size(); ++p) {
        if (!keep[p]) continue;
        per_column[static_cast<std::size_t>(candidates[p].column)]++;
        ds.features.push_back(candidates[p]);
        ds.columns.push_back(std::move(full.columns[p]));
    }
    if (warnings) {
        for (std::size_t c = 0; c < raw.cols(); ++c) {
            if (per_column[c] == 0 && raw.rows() > 0)
                warnings->push_back("column '" + raw.column_names[c] + "' produced no features");
        }
    }
    return ds;
}

BinaryDataset sample_local(const BinaryDataset& global, std::size_t size, std::uint64_t seed) {
    if (size < 1 || size > global.n)
        throw std::invalid_argument("sample size out of range");
    Rng rng(seed);
    const auto picked = rng.sample_indices(static_cast<int>(global.n), static_cast<int>(size));

    BinaryDataset local;
    local.n = size;
    local.column_names = global.column_names;
    local.column_kinds = global.column_kinds;
    local.label_names = global.label_names;
    local.features = global.features;
    local.labels = BitVector(size);
    local.obs_ids.resize(size);
    for (std::size_t j = 0; j < size; ++j) {
        const auto i = static_cast<std::size_t>(picked[j]);
        if (global.labels.test(i)) local.labels.set(j);
        local.obs_ids[j] = global.obs_ids[i];
    }
    local.columns.reserve(global.columns.size());
    for (const auto& col : global.columns) {
        BitVector sub(size);
        for (std::size_t j = 0; j < size; ++j) {
            if (col.test(static_cast<std::size_t>(picked[j]))) sub.set(j);
        }
        local.columns.push_back(std::move(sub));
    }
    return local;
}

RawDataset synthesize(const SynthSpec& spec, std::uint64_t seed) {
    if (spec.noise < 0.0 || spec.noise > 1.0)
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    if (spec.numeric_columns < 1)
        throw std::invalid_argument("need at least one column");
    for (const auto& cond : spec.rule) {
        if (cond.column < 0 || cond.column >= spec.numeric_columns)
            throw std::invalid_argument("planted rule references unknown column");
        if (cond.op == FeatureOp::Eq)
            throw std::invalid_argument("planted rule conditions must be <= or >=");
    }

    Rng rng(seed);
    RawDataset raw;
    const auto cols = static_cast<std::size_t>(spec.numeric_columns);
    raw.column_names.resize(cols);
    raw.kinds.assign(cols, ColumnKind::Numeric);
    raw.numeric.assign(cols, std::vector<double>(spec.rows));
    raw.categorical.assign(cols, {});
    raw.missing.assign(cols, std::vector<std::uint8_t>(spec.rows, 0));
    for (std::size_t c = 0; c < cols; ++c) raw.column_names[c] = "x" + std::to_string(c);

    raw.outcome.resize(spec.rows);
    for (std::size_t i = 0; i < spec.rows; ++i) {
        for (std::size_t c = 0; c < cols; ++c)
            raw.numeric[c][i] = rng.unit() * spec.value_range;
        bool hit = true;
        for (const auto& cond : spec.rule) {
            const double v = raw.numeric[static_cast<std::size_t>(cond.column)][i];
            hit = hit && (cond.op == FeatureOp::Le ? v <= cond.threshold : v >= cond.threshold);
        }
        int y = hit ? 1 : 0;
        if (spec.noise > 0.0 && rng.unit() < spec.noise) y = 1 - y;
        raw.outcome[i] = y;
    }
    return raw;
}

} // namespace sumex
