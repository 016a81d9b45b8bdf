#include "sgf/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sgf/errors.hpp"

namespace sgf {

namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

std::string show(double v)
{
    std::ostringstream s;
    s << v;
    return s.str();
}

// Walks one JSON object, remembering which keys were consumed.
class Section {
public:
    Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "must be an object");
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    const json& raw(const std::string& key)
    {
        seen_.insert(key);
        return obj_.at(key);
    }

    Section child(const std::string& key)
    {
        seen_.insert(key);
        return Section(obj_.at(key), join(path_, key));
    }

    double number(const std::string& key, double fallback, bool required = false)
    {
        if (!has(key)) {
            if (required) throw ConfigError(join(path_, key), "is required");
            return fallback;
        }
        const json& v = raw(key);
        if (!v.is_number()) throw ConfigError(join(path_, key), "must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(join(path_, key), "must be finite");
        return d;
    }

    int integer(const std::string& key, int fallback, bool required = false)
    {
        if (!has(key)) {
            if (required) throw ConfigError(join(path_, key), "is required");
            return fallback;
        }
        const json& v = raw(key);
        if (!v.is_number_integer()) throw ConfigError(join(path_, key), "must be an integer");
        return v.get<int>();
    }

    bool boolean(const std::string& key, bool fallback)
    {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_boolean()) throw ConfigError(join(path_, key), "must be true or false");
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback, bool required = false)
    {
        if (!has(key)) {
            if (required) throw ConfigError(join(path_, key), "is required");
            return fallback;
        }
        const json& v = raw(key);
        if (!v.is_string()) throw ConfigError(join(path_, key), "must be a string");
        return v.get<std::string>();
    }

    template <class T>
    std::vector<T> list(const std::string& key, std::vector<T> fallback)
    {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_array() || v.empty()) throw ConfigError(join(path_, key), "must be a non-empty array");
        std::vector<T> out;
        for (const auto& e : v) {
            if constexpr (std::is_integral_v<T>) {
                if (!e.is_number_integer()) throw ConfigError(join(path_, key), "entries must be integers");
            } else {
                if (!e.is_number()) throw ConfigError(join(path_, key), "entries must be numbers");
            }
            out.push_back(e.get<T>());
        }
        return out;
    }

    std::string key_path(const std::string& key) const { return join(path_, key); }

    void finish(bool strict, std::vector<std::string>* warnings) const
    {
        for (const auto& [key, value] : obj_.items()) {
            if (seen_.count(key)) continue;
            if (strict) throw ConfigError(join(path_, key), "unknown key");
            if (warnings) warnings->push_back("ignoring unknown key '" + join(path_, key) + "'");
        }
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& key, const std::string& what)
{
    if (!ok) throw ConfigError(key, what);
}

void require_positive_list(const std::vector<double>& v, const std::string& key)
{
    for (double x : v) require(x > 0.0, key, "entries must be > 0 (got " + show(x) + ")");
}

template <class F>
auto translate(const std::string& key, F&& f)
{
    try {
        return f();
    } catch (const DomainError& e) {
        throw ConfigError(key, e.what());
    }
}

}  // namespace

SweepConfig RunConfig::sweep_config() const
{
    SweepConfig s;
    s.alphas = sweep.alphas;
    s.nu_law = NuLaw{sweep.nu_c, sweep.nu_gamma};
    s.t_final = t_final;
    s.initial = initial;
    s.grid = grid;
    s.delta_exponent = sweep.delta_exponent;
    s.snapshot_interval = sweep.snapshot_interval;
    s.run = run;
    s.threads = sweep.threads;
    return s;
}

RunConfig parse_config(const std::string& text, bool strict, std::vector<std::string>* warnings)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    Section root(doc, "");
    RunConfig c;

    const std::string model = root.text("model", "", true);
    c.model.kind = translate("model", [&] { return parse_model_kind(model); });
    c.model.alpha = root.number("alpha", 0.0, true);
    require(c.model.alpha >= 0.0, "alpha", "must be >= 0 (got " + show(c.model.alpha) + ")");
    c.model.nu = root.number("nu", 0.0);
    require(c.model.nu >= 0.0, "nu", "must be >= 0 (got " + show(c.model.nu) + ")");
    translate("model", [&] {
        validate(c.model);
        return 0;
    });

    if (!root.has("grid")) throw ConfigError("grid", "is required");
    {
        Section g = root.child("grid");
        c.grid.n_r = g.integer("n_r", 0, true);
        c.grid.n_theta = g.integer("n_theta", 128);
        c.grid.r_max = g.number("r_max", 8.0);
        require(c.grid.n_r >= 8, "grid.n_r", "must be >= 8 (got " + std::to_string(c.grid.n_r) + ")");
        require(c.grid.n_theta >= 8 && c.grid.n_theta % 2 == 0, "grid.n_theta",
                "must be even and >= 8 (got " + std::to_string(c.grid.n_theta) + ")");
        require(c.grid.r_max >= 4.0, "grid.r_max", "must be >= 4 (got " + show(c.grid.r_max) + ")");
        g.finish(strict, warnings);
    }

    c.t_final = root.number("t_final", 0.0, true);
    require(c.t_final > 0.0, "t_final", "must be > 0 (got " + show(c.t_final) + ")");

    if (root.has("time")) {
        Section t = root.child("time");
        c.run.cfl = t.number("cfl", c.run.cfl);
        require(c.run.cfl > 0.0 && c.run.cfl <= 1.0, "time.cfl", "must lie in (0, 1] (got " + show(c.run.cfl) + ")");
        c.run.dt_max = t.number("dt_max", c.run.dt_max);
        require(c.run.dt_max > 0.0, "time.dt_max", "must be > 0 (got " + show(c.run.dt_max) + ")");
        c.run.fixed_dt = t.number("fixed_dt", c.run.fixed_dt);
        require(c.run.fixed_dt >= 0.0, "time.fixed_dt", "must be >= 0 (got " + show(c.run.fixed_dt) + ")");
        c.run.snapshot_interval = t.number("snapshot_interval", c.run.snapshot_interval);
        require(c.run.snapshot_interval >= 0.0, "time.snapshot_interval",
                "must be >= 0 (got " + show(c.run.snapshot_interval) + ")");
        c.run.tail_tol = t.number("tail_tol", c.run.tail_tol);
        require(c.run.tail_tol > 0.0, "time.tail_tol", "must be > 0 (got " + show(c.run.tail_tol) + ")");
        c.run.step.dealias = t.boolean("dealias", c.run.step.dealias);
        c.run.step.poisson.check_circulation = t.boolean("check_circulation", c.run.step.poisson.check_circulation);
        c.run.step.poisson.circulation_tol = t.number("circulation_tol", c.run.step.poisson.circulation_tol);
        require(c.run.step.poisson.circulation_tol > 0.0, "time.circulation_tol", "must be > 0");
        t.finish(strict, warnings);
    }

    if (root.has("case")) {
        Section k = root.child("case");
        InitialCase& ic = c.initial;
        const std::string name = k.text("name", to_string(ic.name));
        ic.name = translate(k.key_path("name"), [&] { return parse_case_name(name); });
        ic.amplitude = k.number("amplitude", ic.amplitude);
        ic.r0 = k.number("r0", ic.r0);
        require(ic.r0 >= 1.0, "case.r0", "must be >= 1 (got " + show(ic.r0) + ")");
        ic.sigma = k.number("sigma", ic.sigma);
        require(ic.sigma > 0.0, "case.sigma", "must be > 0 (got " + show(ic.sigma) + ")");
        ic.mode = k.integer("mode", ic.mode);
        require(ic.mode >= 1, "case.mode", "must be >= 1 (got " + std::to_string(ic.mode) + ")");
        ic.epsilon = k.number("epsilon", ic.epsilon);
        const std::string profile = k.text("profile", to_string(ic.profile));
        ic.profile = translate(k.key_path("profile"), [&] { return parse_boundary_profile(profile); });
        ic.file = k.text("file", ic.file);
        require(ic.name != CaseName::file || !ic.file.empty(), "case.file", "is required when case.name is 'file'");
        k.finish(strict, warnings);
    }

    if (root.has("output")) {
        Section o = root.child("output");
        c.output.dir = o.text("dir", c.output.dir);
        require(!c.output.dir.empty(), "output.dir", "must not be empty");
        const std::string fmt = o.text("snapshot_format", to_string(c.output.snapshot_format));
        c.output.snapshot_format = translate("output.snapshot_format", [&] { return parse_snapshot_format(fmt); });
        c.output.snapshots = o.boolean("snapshots", c.output.snapshots);
        o.finish(strict, warnings);
    }

    if (root.has("sweep")) {
        Section s = root.child("sweep");
        c.sweep.alphas = s.list<double>("alphas", c.sweep.alphas);
        require_positive_list(c.sweep.alphas, "sweep.alphas");
        c.sweep.nu_c = s.number("nu_c", c.sweep.nu_c);
        require(c.sweep.nu_c >= 0.0, "sweep.nu_c", "must be >= 0 (got " + show(c.sweep.nu_c) + ")");
        c.sweep.nu_gamma = s.number("nu_gamma", c.sweep.nu_gamma);
        c.sweep.delta_exponent = s.number("delta_exponent", c.sweep.delta_exponent);
        require(c.sweep.delta_exponent > 0.0, "sweep.delta_exponent", "must be > 0");
        c.sweep.snapshot_interval = s.number("snapshot_interval", c.sweep.snapshot_interval);
        require(c.sweep.snapshot_interval > 0.0, "sweep.snapshot_interval", "must be > 0");
        c.sweep.threads = s.integer("threads", c.sweep.threads);
        require(c.sweep.threads >= 0, "sweep.threads", "must be >= 0");
        s.finish(strict, warnings);
    }

    if (root.has("verify")) {
        Section v = root.child("verify");
        VerifyConfig& vc = c.verify;
        vc.poisson_n_r = v.list<int>("poisson_n_r", vc.poisson_n_r);
        vc.poisson_n_theta = v.integer("poisson_n_theta", vc.poisson_n_theta);
        vc.poisson_slope = v.number("poisson_slope", vc.poisson_slope);
        vc.poisson_slope_tol = v.number("poisson_slope_tol", vc.poisson_slope_tol);
        vc.chain_n_r = v.integer("chain_n_r", vc.chain_n_r);
        vc.chain_alphas = v.list<double>("chain_alphas", vc.chain_alphas);
        require_positive_list(vc.chain_alphas, "verify.chain_alphas");
        vc.chain_tol = v.number("chain_tol", vc.chain_tol);
        vc.probe_n_r = v.integer("probe_n_r", vc.probe_n_r);
        vc.probe_alphas = v.list<double>("probe_alphas", vc.probe_alphas);
        require_positive_list(vc.probe_alphas, "verify.probe_alphas");
        vc.probe_min_slope = v.number("probe_min_slope", vc.probe_min_slope);
        vc.corrector_n_r = v.integer("corrector_n_r", vc.corrector_n_r);
        vc.deltas = v.list<double>("deltas", vc.deltas);
        require_positive_list(vc.deltas, "verify.deltas");
        vc.corrector_slope_tol = v.number("corrector_slope_tol", vc.corrector_slope_tol);
        vc.hypothesis_n_r = v.integer("hypothesis_n_r", vc.hypothesis_n_r);
        vc.hypothesis_alphas = v.list<double>("hypothesis_alphas", vc.hypothesis_alphas);
        require_positive_list(vc.hypothesis_alphas, "verify.hypothesis_alphas");
        vc.hypothesis_slope_tol = v.number("hypothesis_slope_tol", vc.hypothesis_slope_tol);
        vc.audit_interval = v.number("audit_interval", vc.audit_interval);
        require(vc.audit_interval > 0.0, "verify.audit_interval", "must be > 0");
        vc.audit_tol = v.number("audit_tol", vc.audit_tol);
        require(vc.poisson_slope_tol > 0 && vc.chain_tol > 0 && vc.corrector_slope_tol > 0 &&
                    vc.hypothesis_slope_tol > 0 && vc.audit_tol > 0,
                "verify", "tolerances must be > 0");
        for (int n : vc.poisson_n_r) require(n >= 8, "verify.poisson_n_r", "entries must be >= 8");
        for (int n : {vc.chain_n_r, vc.probe_n_r, vc.corrector_n_r, vc.hypothesis_n_r}) {
            require(n >= 8, "verify", "radial resolutions must be >= 8");
        }
        v.finish(strict, warnings);
    }

    root.finish(strict, warnings);
    return c;
}

RunConfig load_config(const std::filesystem::path& path, bool strict, std::vector<std::string>* warnings)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot read config file '" + path.string() + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return parse_config(s.str(), strict, warnings);
}

std::string to_json(const RunConfig& c)
{
    json j;
    j["model"] = to_string(c.model.kind);
    j["alpha"] = c.model.alpha;
    j["nu"] = c.model.nu;
    j["grid"] = {{"n_r", c.grid.n_r}, {"n_theta", c.grid.n_theta}, {"r_max", c.grid.r_max}};
    j["t_final"] = c.t_final;
    j["time"] = {{"cfl", c.run.cfl},
                 {"dt_max", c.run.dt_max},
                 {"fixed_dt", c.run.fixed_dt},
                 {"snapshot_interval", c.run.snapshot_interval},
                 {"tail_tol", c.run.tail_tol},
                 {"dealias", c.run.step.dealias},
                 {"check_circulation", c.run.step.poisson.check_circulation},
                 {"circulation_tol", c.run.step.poisson.circulation_tol}};
    j["case"] = {{"name", to_string(c.initial.name)}, {"amplitude", c.initial.amplitude},
                 {"r0", c.initial.r0},                {"sigma", c.initial.sigma},
                 {"mode", c.initial.mode},            {"epsilon", c.initial.epsilon},
                 {"profile", to_string(c.initial.profile)}, {"file", c.initial.file}};
    j["output"] = {{"dir", c.output.dir},
                   {"snapshot_format", to_string(c.output.snapshot_format)},
                   {"snapshots", c.output.snapshots}};
    j["sweep"] = {{"alphas", c.sweep.alphas},
                  {"nu_c", c.sweep.nu_c},
                  {"nu_gamma", c.sweep.nu_gamma},
                  {"delta_exponent", c.sweep.delta_exponent},
                  {"snapshot_interval", c.sweep.snapshot_interval},
                  {"threads", c.sweep.threads}};
    const VerifyConfig& v = c.verify;
    j["verify"] = {{"poisson_n_r", v.poisson_n_r},
                   {"poisson_n_theta", v.poisson_n_theta},
                   {"poisson_slope", v.poisson_slope},
                   {"poisson_slope_tol", v.poisson_slope_tol},
                   {"chain_n_r", v.chain_n_r},
                   {"chain_alphas", v.chain_alphas},
                   {"chain_tol", v.chain_tol},
                   {"probe_n_r", v.probe_n_r},
                   {"probe_alphas", v.probe_alphas},
                   {"probe_min_slope", v.probe_min_slope},
                   {"corrector_n_r", v.corrector_n_r},
                   {"deltas", v.deltas},
                   {"corrector_slope_tol", v.corrector_slope_tol},
                   {"hypothesis_n_r", v.hypothesis_n_r},
                   {"hypothesis_alphas", v.hypothesis_alphas},
                   {"hypothesis_slope_tol", v.hypothesis_slope_tol},
                   {"audit_interval", v.audit_interval},
                   {"audit_tol", v.audit_tol}};
    return j.dump(2);
}

bool equivalent(const RunConfig& a, const RunConfig& b)
{
    const RunOptions& ra = a.run;
    const RunOptions& rb = b.run;
    const bool run_eq = ra.cfl == rb.cfl && ra.dt_max == rb.dt_max && ra.fixed_dt == rb.fixed_dt &&
                        ra.snapshot_interval == rb.snapshot_interval && ra.tail_tol == rb.tail_tol &&
                        ra.step.dealias == rb.step.dealias &&
                        ra.step.poisson.check_circulation == rb.step.poisson.check_circulation &&
                        ra.step.poisson.circulation_tol == rb.step.poisson.circulation_tol;
    return a.model == b.model && a.grid == b.grid && a.t_final == b.t_final && run_eq && a.initial == b.initial &&
           a.output == b.output && a.sweep == b.sweep && a.verify == b.verify;
}

}  // namespace sgf
