#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mixnorm/clt_lab.hpp"

namespace mixnorm {

/// Request parsed from the `constants` config section: a K_R table over
/// pValues and, optionally, a K_M table over mValues for one schedule.
struct MixingaleRequest {
    std::vector<double> m_values;
    MixingSchedule schedule;
    double tol = 1e-12;
};

struct ConstantsRequest {
    std::vector<double> p_values;
    bool symmetric = false;
    std::optional<MixingaleRequest> mixingale;
};

/// A parsed, validated, canonicalized config document. Sections are
/// optional at this level; each subcommand states which it requires.
struct ParsedConfig {
    std::string experiment_id;   // explicit "id" or exp-<12 hash hex chars>
    std::string canonical_text;  // normalized re-emission of the document
    std::uint64_t config_hash = 0;
    bool explicit_id = false;

    GridPtr grid;
    std::optional<ExponentVector> exponents;
    std::optional<RandomFieldModel> model;
    std::optional<double> m;
    std::vector<std::size_t> n_schedule;
    std::optional<std::size_t> replicas;
    std::optional<SeedSpec> seed;
    std::optional<OperatorMatrix> op;
    std::optional<TailSpec> tail;
    std::optional<GridField> field;
    std::optional<ConstantsRequest> constants;
};

namespace cfgdetail {

using json = nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    raise(errc::validation, what + " at " + path);
}

/// Re-raises library errors with the config path prepended, so every
/// diagnostic names the field that caused it.
template <typename F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        raise(e.code(), path + ": " + e.what());
    }
}

inline const json& expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

inline void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed) known |= item.key() == k;
        if (!known) fail(path + "." + item.key(), "unknown key");
    }
}

inline const json& require_key(const json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required key");
    return *it;
}

inline const json* optional_key(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

inline double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(path, "expected a finite number");
    return x;
}

inline bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

inline std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

inline std::uint64_t get_uint(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    fail(path, "expected a nonnegative integer");
}

inline std::size_t get_count(const json& j, const std::string& path) {
    return static_cast<std::size_t>(get_uint(j, path));
}

inline std::vector<double> get_number_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// --- section parsers; each returns both the value and its canonical form ---

inline std::pair<GridPtr, json> parse_grid(const json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown(j, path, {"axes"});
    const json& jaxes = require_key(j, path, "axes");
    if (!jaxes.is_array() || jaxes.empty()) fail(path + ".axes", "expected a nonempty array");
    std::vector<Axis> axes;
    json caxes = json::array();
    for (std::size_t k = 0; k < jaxes.size(); ++k) {
        const std::string apath = path + ".axes[" + std::to_string(k) + "]";
        const json& ja = expect_object(jaxes[k], apath);
        reject_unknown(ja, apath, {"label", "points", "weights"});
        const std::string label = get_string(require_key(ja, apath, "label"), apath + ".label");
        std::vector<double> points = get_number_array(require_key(ja, apath, "points"), apath + ".points");
        std::vector<double> weights = get_number_array(require_key(ja, apath, "weights"), apath + ".weights");
        caxes.push_back(json{{"label", label}, {"points", points}, {"weights", weights}});
        axes.push_back(at_path(apath, [&] { return build_axis(label, std::move(points), std::move(weights)); }));
    }
    return {at_path(path, [&] { return make_grid(std::move(axes)); }), json{{"axes", std::move(caxes)}}};
}

inline std::pair<ExponentVector, json> parse_exponents(const json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown(j, path, {"p"});
    std::vector<double> p = get_number_array(require_key(j, path, "p"), path + ".p");
    json c{{"p", p}};
    return {at_path(path + ".p", [&] { return ExponentVector(std::move(p)); }), std::move(c)};
}

inline std::pair<DriverSpec, json> parse_driver(const json& j, const std::string& path) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "gaussian") return {DriverSpec::gaussian(), json(name)};
        if (name == "rademacher") return {DriverSpec::rademacher(), json(name)};
        if (name == "centeredExponential") return {DriverSpec::centered_exponential(), json(name)};
        fail(path, "unknown driver '" + name + "'");
    }
    expect_object(j, path);
    reject_unknown(j, path, {"symmetricWeibull"});
    const json& jw = expect_object(require_key(j, path, "symmetricWeibull"), path + ".symmetricWeibull");
    reject_unknown(jw, path + ".symmetricWeibull", {"Q"});
    const double q = get_number(require_key(jw, path + ".symmetricWeibull", "Q"), path + ".symmetricWeibull.Q");
    return {DriverSpec::symmetric_weibull(q), json{{"symmetricWeibull", {{"Q", q}}}}};
}

inline std::pair<RandomFieldModel, json> parse_model(const json& j, const std::string& path, const GridPtr& grid) {
    expect_object(j, path);
    reject_unknown(j, path, {"driver", "envelope", "spatial", "temporal"});

    ModelSpec spec;
    spec.grid = grid;
    json canonical;

    auto [driver, cdriver] = parse_driver(require_key(j, path, "driver"), path + ".driver");
    spec.driver = driver;
    canonical["driver"] = std::move(cdriver);

    const json& jenv = require_key(j, path, "envelope");
    if (jenv.is_object()) {
        reject_unknown(jenv, path + ".envelope", {"constant"});
        const double c = get_number(require_key(jenv, path + ".envelope", "constant"), path + ".envelope.constant");
        spec.envelope.assign(grid->cell_count(), c);
    } else {
        spec.envelope = get_number_array(jenv, path + ".envelope");
    }
    canonical["envelope"] = spec.envelope;

    if (const json* jsp = optional_key(j, "spatial")) {
        if (jsp->is_string()) {
            if (jsp->get<std::string>() != "whiteNoise") fail(path + ".spatial", "unknown spatial mode");
        } else {
            expect_object(*jsp, path + ".spatial");
            reject_unknown(*jsp, path + ".spatial", {"correlated"});
            const std::string cpath = path + ".spatial.correlated";
            const json& jc = expect_object(require_key(*jsp, path + ".spatial", "correlated"), cpath);
            reject_unknown(jc, cpath, {"matrix"});
            const json& jm = require_key(jc, cpath, "matrix");
            if (!jm.is_array() || jm.empty()) fail(cpath + ".matrix", "expected a nonempty array of rows");
            const std::size_t n = jm.size();
            std::vector<double> entries;
            entries.reserve(n * n);
            for (std::size_t r = 0; r < n; ++r) {
                const std::vector<double> row =
                    get_number_array(jm[r], cpath + ".matrix[" + std::to_string(r) + "]");
                if (row.size() != n)
                    fail(cpath + ".matrix[" + std::to_string(r) + "]", "matrix rows must be square");
                entries.insert(entries.end(), row.begin(), row.end());
            }
            spec.spatial = SpatialMode::correlated;
            spec.correlation = at_path(cpath + ".matrix", [&] { return CovarianceMatrix(n, std::move(entries)); });
        }
    }
    if (spec.spatial == SpatialMode::white_noise) {
        canonical["spatial"] = "whiteNoise";
    } else {
        json rows = json::array();
        const auto& C = *spec.correlation;
        for (std::size_t r = 0; r < C.size(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < C.size(); ++c) row.push_back(C.entry(r, c));
            rows.push_back(std::move(row));
        }
        canonical["spatial"] = json{{"correlated", {{"matrix", std::move(rows)}}}};
    }

    if (const json* jt = optional_key(j, "temporal")) {
        if (jt->is_string()) {
            if (jt->get<std::string>() != "iid") fail(path + ".temporal", "unknown temporal mode");
        } else {
            expect_object(*jt, path + ".temporal");
            reject_unknown(*jt, path + ".temporal", {"martingaleDifference", "mDependent"});
            if (const json* jmart = optional_key(*jt, "martingaleDifference")) {
                if (optional_key(*jt, "mDependent")) fail(path + ".temporal", "choose one temporal mode");
                const std::string mpath = path + ".temporal.martingaleDifference";
                expect_object(*jmart, mpath);
                reject_unknown(*jmart, mpath, {"modulation"});
                spec.temporal = TemporalMode::martingale_difference;
                if (const json* jmod = optional_key(*jmart, "modulation"))
                    spec.martingale.modulation = get_number(*jmod, mpath + ".modulation");
            } else if (const json* jdep = optional_key(*jt, "mDependent")) {
                const std::string dpath = path + ".temporal.mDependent";
                expect_object(*jdep, dpath);
                reject_unknown(*jdep, dpath, {"coefficients", "betaCap"});
                MDependentSpec dep;
                dep.coefficients =
                    get_number_array(require_key(*jdep, dpath, "coefficients"), dpath + ".coefficients");
                if (const json* jcap = optional_key(*jdep, "betaCap"))
                    dep.beta_cap = get_number(*jcap, dpath + ".betaCap");
                spec.temporal = TemporalMode::m_dependent;
                spec.m_dependent = std::move(dep);
            } else {
                fail(path + ".temporal", "expected martingaleDifference or mDependent");
            }
        }
    }
    switch (spec.temporal) {
    case TemporalMode::iid: canonical["temporal"] = "iid"; break;
    case TemporalMode::martingale_difference:
        canonical["temporal"] = json{{"martingaleDifference", {{"modulation", spec.martingale.modulation}}}};
        break;
    case TemporalMode::m_dependent: {
        json dep{{"coefficients", spec.m_dependent->coefficients}};
        if (spec.m_dependent->beta_cap) dep["betaCap"] = *spec.m_dependent->beta_cap;
        canonical["temporal"] = json{{"mDependent", std::move(dep)}};
        break;
    }
    }

    return {at_path(path, [&] { return RandomFieldModel(std::move(spec)); }), std::move(canonical)};
}

struct ExperimentSection {
    double m = 1.0;
    std::vector<std::size_t> n_schedule;
    std::size_t replicas = 0;
    SeedSpec seed;
};

inline std::pair<ExperimentSection, json> parse_experiment(const json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown(j, path, {"m", "nSchedule", "replicas", "seed"});
    ExperimentSection out;
    out.m = get_number(require_key(j, path, "m"), path + ".m");
    const json& jsched = require_key(j, path, "nSchedule");
    if (!jsched.is_array() || jsched.empty()) fail(path + ".nSchedule", "expected a nonempty array");
    for (std::size_t i = 0; i < jsched.size(); ++i)
        out.n_schedule.push_back(get_count(jsched[i], path + ".nSchedule[" + std::to_string(i) + "]"));
    out.replicas = get_count(require_key(j, path, "replicas"), path + ".replicas");
    const std::string spath = path + ".seed";
    const json& jseed = expect_object(require_key(j, path, "seed"), spath);
    reject_unknown(jseed, spath, {"masterSeed", "streamId"});
    out.seed.master_seed = get_uint(require_key(jseed, spath, "masterSeed"), spath + ".masterSeed");
    if (const json* jsid = optional_key(jseed, "streamId")) out.seed.stream_id = get_uint(*jsid, spath + ".streamId");
    if (out.seed.stream_id != 0) fail(spath + ".streamId", "streamId must be 0; streams are derived internally");
    json c{{"m", out.m},
           {"nSchedule", out.n_schedule},
           {"replicas", out.replicas},
           {"seed", {{"masterSeed", out.seed.master_seed}, {"streamId", out.seed.stream_id}}}};
    return {std::move(out), std::move(c)};
}

inline std::pair<OperatorMatrix, json> parse_operator(const json& j, const std::string& path, const GridPtr& source) {
    expect_object(j, path);
    reject_unknown(j, path, {"kind", "scale", "target", "entries"});
    const std::string kind = get_string(require_key(j, path, "kind"), path + ".kind");
    const auto forbid = [&](const char* key) {
        if (optional_key(j, key)) fail(path + "." + key, "key not allowed for kind '" + kind + "'");
    };
    if (kind == "identity") {
        forbid("scale");
        forbid("target");
        forbid("entries");
        return {identity_operator(source), json{{"kind", "identity"}}};
    }
    if (kind == "scaledIdentity") {
        forbid("target");
        forbid("entries");
        const double s = get_number(require_key(j, path, "scale"), path + ".scale");
        return {at_path(path, [&] { return scaled_identity_operator(source, s); }),
                json{{"kind", "scaledIdentity"}, {"scale", s}}};
    }
    if (kind == "dividedDifference") {
        forbid("scale");
        forbid("target");
        forbid("entries");
        return {at_path(path, [&] { return divided_difference_operator(source); }),
                json{{"kind", "dividedDifference"}}};
    }
    if (kind == "zero") {
        forbid("scale");
        forbid("entries");
        GridPtr target = source;
        json c{{"kind", "zero"}};
        if (const json* jt = optional_key(j, "target")) {
            auto [grid, cgrid] = parse_grid(*jt, path + ".target");
            target = std::move(grid);
            c["target"] = std::move(cgrid);
        }
        return {zero_operator(source, target), std::move(c)};
    }
    if (kind == "matrix") {
        forbid("scale");
        auto [target, ctarget] = parse_grid(require_key(j, path, "target"), path + ".target");
        const json& jrows = require_key(j, path, "entries");
        if (!jrows.is_array() || jrows.size() != target->cell_count())
            fail(path + ".entries", "expected one row per target cell (" + std::to_string(target->cell_count()) + ")");
        std::vector<double> entries;
        entries.reserve(target->cell_count() * source->cell_count());
        json crows = json::array();
        for (std::size_t r = 0; r < jrows.size(); ++r) {
            const std::string rpath = path + ".entries[" + std::to_string(r) + "]";
            const std::vector<double> row = get_number_array(jrows[r], rpath);
            if (row.size() != source->cell_count())
                fail(rpath, "expected one entry per source cell (" + std::to_string(source->cell_count()) + ")");
            entries.insert(entries.end(), row.begin(), row.end());
            crows.push_back(row);
        }
        return {at_path(path, [&] { return OperatorMatrix(source, target, std::move(entries)); }),
                json{{"kind", "matrix"}, {"target", std::move(ctarget)}, {"entries", std::move(crows)}}};
    }
    fail(path + ".kind", "unknown operator kind '" + kind + "'");
}

inline std::pair<TailSpec, json> parse_tail(const json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown(j, path, {"Q1", "Q2", "thresholds"});
    TailSpec t;
    t.q1 = get_number(require_key(j, path, "Q1"), path + ".Q1");
    t.q2 = get_number(require_key(j, path, "Q2"), path + ".Q2");
    t.thresholds = get_number_array(require_key(j, path, "thresholds"), path + ".thresholds");
    json c{{"Q1", t.q1}, {"Q2", t.q2}, {"thresholds", t.thresholds}};
    return {std::move(t), std::move(c)};
}

inline std::pair<GridField, json> parse_field(const json& j, const std::string& path, const GridPtr& grid) {
    expect_object(j, path);
    reject_unknown(j, path, {"values"});
    std::vector<double> values = get_number_array(require_key(j, path, "values"), path + ".values");
    if (values.size() != grid->cell_count())
        fail(path + ".values", "expected " + std::to_string(grid->cell_count()) + " row-major values, got " +
                                   std::to_string(values.size()));
    json c{{"values", values}};
    return {GridField(grid, std::move(values)), std::move(c)};
}

inline std::pair<MixingSchedule, json> parse_schedule(const json& j, const std::string& path) {
    expect_object(j, path);
    const std::string kind = get_string(require_key(j, path, "kind"), path + ".kind");
    if (kind == "zero") {
        reject_unknown(j, path, {"kind"});
        return {MixingSchedule::zero(), json{{"kind", "zero"}}};
    }
    if (kind == "finite") {
        reject_unknown(j, path, {"kind", "values"});
        std::vector<double> values = get_number_array(require_key(j, path, "values"), path + ".values");
        json c{{"kind", "finite"}, {"values", values}};
        return {at_path(path, [&] { return MixingSchedule::finite(std::move(values)); }), std::move(c)};
    }
    if (kind == "geometric") {
        reject_unknown(j, path, {"kind", "amplitude", "ratio"});
        const double a = get_number(require_key(j, path, "amplitude"), path + ".amplitude");
        const double r = get_number(require_key(j, path, "ratio"), path + ".ratio");
        return {at_path(path, [&] { return MixingSchedule::geometric(a, r); }),
                json{{"kind", "geometric"}, {"amplitude", a}, {"ratio", r}}};
    }
    fail(path + ".kind", "unknown schedule kind '" + kind + "' (zero, finite, geometric)");
}

inline std::pair<ConstantsRequest, json> parse_constants(const json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown(j, path, {"pValues", "symmetric", "mixingale"});
    ConstantsRequest out;
    out.p_values = get_number_array(require_key(j, path, "pValues"), path + ".pValues");
    if (out.p_values.empty()) fail(path + ".pValues", "expected at least one moment order");
    if (const json* js = optional_key(j, "symmetric")) out.symmetric = get_bool(*js, path + ".symmetric");
    json c{{"pValues", out.p_values}, {"symmetric", out.symmetric}};
    if (const json* jm = optional_key(j, "mixingale")) {
        const std::string mpath = path + ".mixingale";
        expect_object(*jm, mpath);
        reject_unknown(*jm, mpath, {"mValues", "beta", "tol"});
        MixingaleRequest req;
        req.m_values = get_number_array(require_key(*jm, mpath, "mValues"), mpath + ".mValues");
        if (req.m_values.empty()) fail(mpath + ".mValues", "expected at least one order");
        auto [sched, csched] = parse_schedule(require_key(*jm, mpath, "beta"), mpath + ".beta");
        req.schedule = std::move(sched);
        if (const json* jt = optional_key(*jm, "tol")) {
            req.tol = get_number(*jt, mpath + ".tol");
            if (!(req.tol > 0.0)) fail(mpath + ".tol", "tolerance must be positive");
        }
        c["mixingale"] = json{{"mValues", req.m_values}, {"beta", std::move(csched)}, {"tol", req.tol}};
        out.mixingale = std::move(req);
    }
    return {std::move(out), std::move(c)};
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h, int digits) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf).substr(0, static_cast<std::size_t>(digits));
}

} // namespace cfgdetail

/// Parses, schema-validates, and canonicalizes a config document. JSON
/// syntax errors raise ConfigParse; schema and value errors raise
/// Validation (or the specific library error) with a $.field path.
inline ParsedConfig parse_config(const std::string& text) {
    namespace cd = cfgdetail;
    cd::json root;
    try {
        root = cd::json::parse(text);
    } catch (const cd::json::parse_error& e) {
        raise(errc::config_parse, std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) raise(errc::config_parse, "config root must be a JSON object");
    cd::reject_unknown(root, "$",
                       {"id", "grid", "exponents", "model", "experiment", "operator", "tail", "field", "constants"});

    ParsedConfig out;
    cd::json canonical = cd::json::object();

    if (const cd::json* jid = cd::optional_key(root, "id")) {
        const std::string id = cd::get_string(*jid, "$.id");
        if (id.empty()) cd::fail("$.id", "id must not be empty");
        for (char ch : id)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_'))
                cd::fail("$.id", "id may contain [A-Za-z0-9_-] only");
        out.experiment_id = id;
        out.explicit_id = true;
        canonical["id"] = id;
    }

    if (const cd::json* jg = cd::optional_key(root, "grid")) {
        auto [grid, cgrid] = cd::parse_grid(*jg, "$.grid");
        out.grid = std::move(grid);
        canonical["grid"] = std::move(cgrid);
    }
    if (const cd::json* je = cd::optional_key(root, "exponents")) {
        auto [p, cexp] = cd::parse_exponents(*je, "$.exponents");
        out.exponents = std::move(p);
        canonical["exponents"] = std::move(cexp);
    }
    if (const cd::json* jm = cd::optional_key(root, "model")) {
        if (!out.grid) cd::fail("$.model", "model requires a $.grid section");
        auto [model, cmodel] = cd::parse_model(*jm, "$.model", out.grid);
        out.model = std::move(model);
        canonical["model"] = std::move(cmodel);
    }
    if (const cd::json* jx = cd::optional_key(root, "experiment")) {
        auto [exp, cexp] = cd::parse_experiment(*jx, "$.experiment");
        out.m = exp.m;
        out.n_schedule = std::move(exp.n_schedule);
        out.replicas = exp.replicas;
        out.seed = exp.seed;
        canonical["experiment"] = std::move(cexp);
    }
    if (const cd::json* jo = cd::optional_key(root, "operator")) {
        if (!out.grid) cd::fail("$.operator", "operator requires a $.grid section");
        auto [op, cop] = cd::parse_operator(*jo, "$.operator", out.grid);
        out.op = std::move(op);
        canonical["operator"] = std::move(cop);
    }
    if (const cd::json* jt = cd::optional_key(root, "tail")) {
        auto [tail, ctail] = cd::parse_tail(*jt, "$.tail");
        out.tail = std::move(tail);
        canonical["tail"] = std::move(ctail);
    }
    if (const cd::json* jf = cd::optional_key(root, "field")) {
        if (!out.grid) cd::fail("$.field", "field requires a $.grid section");
        auto [field, cfield] = cd::parse_field(*jf, "$.field", out.grid);
        out.field = std::move(field);
        canonical["field"] = std::move(cfield);
    }
    if (const cd::json* jc = cd::optional_key(root, "constants")) {
        auto [constants, cconst] = cd::parse_constants(*jc, "$.constants");
        out.constants = std::move(constants);
        canonical["constants"] = std::move(cconst);
    }

    out.canonical_text = canonical.dump();
    out.config_hash = cd::fnv1a64(out.canonical_text);
    if (!out.explicit_id) out.experiment_id = "exp-" + cfgdetail::hash_hex(out.config_hash, 12);
    return out;
}

/// Normalized re-emission of a config document; idempotent:
/// canonicalize(canonicalize(t)) == canonicalize(t).
inline std::string canonicalize(const std::string& text) { return parse_config(text).canonical_text; }

/// Assembles the library ExperimentConfig from parsed sections, raising
/// Validation with the missing field's path when a section is absent, and
/// running the full library validation before returning.
inline ExperimentConfig to_experiment_config(const ParsedConfig& c, std::size_t workers,
                                             std::optional<std::uint64_t> seed_override = std::nullopt) {
    if (!c.grid) raise(errc::validation, "missing required section at $.grid");
    if (!c.exponents) raise(errc::validation, "missing required key at $.exponents.p");
    if (!c.model) raise(errc::validation, "missing required section at $.model");
    if (!c.m || !c.replicas || !c.seed || c.n_schedule.empty())
        raise(errc::validation, "missing required section at $.experiment");
    SeedSpec seed = *c.seed;
    if (seed_override) seed.master_seed = *seed_override;
    ExperimentConfig cfg{*c.model, *c.exponents, *c.m,   c.n_schedule, *c.replicas,
                         seed,     c.op,         c.tail, workers};
    validate(cfg);
    return cfg;
}

} // namespace mixnorm
