#include "conespec/config.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "conespec/character.hpp"
#include "conespec/errors.hpp"
#include "conespec/verify.hpp"
#include "conespec/witten.hpp"

namespace conespec {

using nlohmann::json;

namespace {

// schema helpers

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + ": bad value for '" + key + "'");
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
    return j.contains(key) ? get<T>(j, key, where) : fallback;
}

Rational rational_from(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_object()) throw ConfigError(where + ": rationals are {\"num\", \"den\"} objects");
    allow_keys(j, {"num", "den"}, where);
    auto num = get<std::int64_t>(j, "num", where);
    auto den = get_or<std::int64_t>(j, "den", 1, where);
    if (den == 0) throw ConfigError(where + ": zero denominator");
    return make_rational(num, den);
}

Rational rational_at(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
    return rational_from(j.at(key), where + "." + key);
}

Rational rational_or(const json& j, const char* key, const Rational& fallback, const std::string& where) {
    return j.contains(key) ? rational_at(j, key, where) : fallback;
}

json to_j(const Rational& q) { return json{{"num", num_i64(q)}, {"den", den_i64(q)}}; }

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string key_of(const std::vector<int>& n, const std::vector<int>& k) {
    auto join = [](const std::vector<int>& v) {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ')';
        return os.str();
    };
    return "n=" + join(n) + ";k=" + join(k);
}

// sections

ModelSpace space_from(const json& j) {
    const std::string w = "space";
    allow_keys(j, {"factors", "reeb_alpha", "x_max"}, w);
    std::vector<LinkFactor> fs;
    const json& arr = j.at("factors");
    if (!arr.is_array() || arr.empty()) throw ConfigError("space.factors: expected a nonempty array");
    for (const auto& f : arr) {
        allow_keys(f, {"link_dim", "exponent", "torus_lengths"}, "space.factors[]");
        LinkFactor lf;
        lf.link_dim = get<int>(f, "link_dim", "space.factors[]");
        lf.exponent = rational_at(f, "exponent", "space.factors[]");
        if (f.contains("torus_lengths")) lf.torus_lengths = get<std::vector<double>>(f, "torus_lengths", "space.factors[]");
        fs.push_back(std::move(lf));
    }
    std::optional<Rational> alpha;
    if (j.contains("reeb_alpha") && !j.at("reeb_alpha").is_null()) alpha = rational_at(j, "reeb_alpha", w);
    double x_max = get_or<double>(j, "x_max", 1.0, w);
    try {
        return ModelSpace(std::move(fs), alpha, x_max);
    } catch (const ModelError& e) {
        throw ConfigError(std::string("space: ") + e.what());
    }
}

json to_j(const ModelSpace& s) {
    json fs = json::array();
    for (const auto& f : s.factors()) {
        json o{{"link_dim", f.link_dim}, {"exponent", to_j(f.exponent)}};
        if (f.torus_lengths) o["torus_lengths"] = *f.torus_lengths;
        fs.push_back(o);
    }
    json out{{"factors", fs}, {"x_max", s.x_max()}};
    if (s.reeb_alpha()) out["reeb_alpha"] = to_j(*s.reeb_alpha());
    return out;
}

ComplexSpec complex_from(const json& j, const std::string& w) {
    allow_keys(j, {"kind", "W", "B", "twist_shift"}, w);
    ComplexSpec c;
    std::string kind = lower(get_or<std::string>(j, "kind", "de_rham", w));
    if (kind == "de_rham" || kind == "derham") c.kind = ComplexKind::DeRham;
    else if (kind == "dolbeault") c.kind = ComplexKind::Dolbeault;
    else throw ConfigError(w + ".kind: expected de_rham or dolbeault");
    std::string W = lower(get_or<std::string>(j, "W", "min", w));
    if (W == "min") c.W = Ideal::Min;
    else if (W == "max") c.W = Ideal::Max;
    else throw ConfigError(w + ".W: expected min or max");
    std::string B = get_or<std::string>(j, "B", "N", w);
    if (B == "N") c.B = BoundaryType::N;
    else if (B == "D") c.B = BoundaryType::D;
    else throw ConfigError(w + ".B: expected N or D");
    c.twist_shift = rational_or(j, "twist_shift", Rational(0), w);
    return c;
}

json to_j(const ComplexSpec& c) {
    return json{{"kind", c.kind == ComplexKind::DeRham ? "de_rham" : "dolbeault"},
                {"W", c.W == Ideal::Min ? "min" : "max"},
                {"B", c.B == BoundaryType::N ? "N" : "D"},
                {"twist_shift", to_j(c.twist_shift)}};
}

ModesConfig modes_from(const json& j) {
    const std::string w = "modes";
    allow_keys(j, {"torus", "explicit", "form_types"}, w);
    ModesConfig m;
    if (j.contains("torus")) {
        const json& t = j.at("torus");
        allow_keys(t, {"degree_lo", "degree_hi", "mu_cutoff", "with_nu"}, "modes.torus");
        TorusModes tm;
        tm.degrees.lo = get_or<int>(t, "degree_lo", 0, "modes.torus");
        tm.degrees.hi = get_or<int>(t, "degree_hi", tm.degrees.lo, "modes.torus");
        tm.mu_cutoff = get<double>(t, "mu_cutoff", "modes.torus");
        tm.with_nu = get_or<bool>(t, "with_nu", false, "modes.torus");
        m.torus = tm;
    }
    if (j.contains("explicit")) {
        for (const auto& e : j.at("explicit")) {
            const std::string we = "modes.explicit[]";
            allow_keys(e, {"mu", "multidegree", "nu", "multiplicity", "fourier", "key"}, we);
            LinkMode lm;
            lm.mu = get<std::vector<double>>(e, "mu", we);
            for (double v : lm.mu)
                if (!(v >= 0)) throw ConfigError(we + ": mu must be nonnegative");
            lm.multidegree.k = get_or<std::vector<int>>(e, "multidegree", std::vector<int>(lm.mu.size(), 0), we);
            if (e.contains("nu") && !e.at("nu").is_null()) lm.nu = get<double>(e, "nu", we);
            lm.multiplicity = get_or<int>(e, "multiplicity", 1, we);
            if (lm.multiplicity < 1) throw ConfigError(we + ": multiplicity must be positive");
            lm.fourier = get_or<std::vector<int>>(e, "fourier", {}, we);
            lm.key = get_or<std::string>(e, "key", key_of(lm.fourier, lm.multidegree.k), we);
            m.explicit_modes.push_back(std::move(lm));
        }
    }
    if (m.torus && !m.explicit_modes.empty()) throw ConfigError("modes: give either torus or explicit, not both");
    if (j.contains("form_types")) {
        m.form_types.clear();
        for (const auto& s : j.at("form_types")) {
            try {
                m.form_types.push_back(form_type_from_string(s.get<std::string>()));
            } catch (const std::exception&) {
                throw ConfigError("modes.form_types: unknown form type");
            }
        }
    }
    return m;
}

json to_j(const ModesConfig& m) {
    json out;
    if (m.torus)
        out["torus"] = json{{"degree_lo", m.torus->degrees.lo},
                            {"degree_hi", m.torus->degrees.hi},
                            {"mu_cutoff", m.torus->mu_cutoff},
                            {"with_nu", m.torus->with_nu}};
    if (!m.explicit_modes.empty()) {
        json arr = json::array();
        for (const auto& lm : m.explicit_modes) {
            json o{{"mu", lm.mu},
                   {"multidegree", lm.multidegree.k},
                   {"multiplicity", lm.multiplicity},
                   {"fourier", lm.fourier},
                   {"key", lm.key}};
            o["nu"] = lm.nu ? json(*lm.nu) : json(nullptr);
            arr.push_back(o);
        }
        out["explicit"] = arr;
    }
    json ft = json::array();
    for (auto t : m.form_types) ft.push_back(to_string(t));
    out["form_types"] = ft;
    return out;
}

WittenConfig witten_from(const json& j) {
    const std::string w = "witten";
    allow_keys(j, {"h", "epsilons", "K", "threshold"}, w);
    WittenConfig c;
    if (j.contains("h")) {
        const json& h = j.at("h");
        allow_keys(h, {"kind", "c", "scale"}, "witten.h");
        if (get_or<std::string>(h, "kind", "power_law", "witten.h") != "power_law")
            throw ConfigError("witten.h: only power_law Morse functions are configurable");
        c.c = rational_or(h, "c", Rational(1), "witten.h");
        c.scale = rational_or(h, "scale", Rational(1), "witten.h");
    }
    c.epsilons = get<std::vector<double>>(j, "epsilons", w);
    if (c.epsilons.empty()) throw ConfigError("witten.epsilons: empty");
    if (j.contains("K") && !j.at("K").is_null()) {
        int K = get<int>(j, "K", w);
        if (K != 1 && K != -1) throw ConfigError("witten.K: expected +1 or -1");
        c.K = K;
    }
    c.threshold = get_or<double>(j, "threshold", 1e-3, w);
    return c;
}

json to_j(const WittenConfig& c) {
    json out{{"h", json{{"kind", "power_law"}, {"c", to_j(c.c)}, {"scale", to_j(c.scale)}}},
             {"epsilons", c.epsilons},
             {"threshold", c.threshold}};
    out["K"] = c.K ? json(*c.K) : json(nullptr);
    return out;
}

SolverConfig solver_from(const json& j) {
    const std::string w = "solver";
    allow_keys(j, {"N", "grading", "x_min", "n_eigen", "tolerance"}, w);
    SolverConfig s;
    s.mesh.N = get_or<int>(j, "N", s.mesh.N, w);
    s.mesh.grading = get_or<double>(j, "grading", s.mesh.grading, w);
    s.mesh.x_min_rel = get_or<double>(j, "x_min", s.mesh.x_min_rel, w);
    s.n_eigen = get_or<int>(j, "n_eigen", s.n_eigen, w);
    s.tolerance = get_or<double>(j, "tolerance", s.tolerance, w);
    if (s.mesh.N < 32) throw ConfigError("solver.N: at least 32");
    if (!(s.mesh.grading >= 1.0)) throw ConfigError("solver.grading: at least 1");
    if (!(s.mesh.x_min_rel > 0 && s.mesh.x_min_rel < 0.01)) throw ConfigError("solver.x_min: in (0, 0.01)");
    if (s.n_eigen < 1) throw ConfigError("solver.n_eigen: positive");
    if (!(s.tolerance > 0)) throw ConfigError("solver.tolerance: positive");
    return s;
}

json to_j(const SolverConfig& s) {
    return json{{"N", s.mesh.N},
                {"grading", s.mesh.grading},
                {"x_min", s.mesh.x_min_rel},
                {"n_eigen", s.n_eigen},
                {"tolerance", s.tolerance}};
}

OutputConfig output_from(const json& j) {
    allow_keys(j, {"format", "path"}, "output");
    OutputConfig o;
    o.format = get_or<std::string>(j, "format", "csv", "output");
    if (o.format != "csv" && o.format != "json") throw ConfigError("output.format: csv or json");
    o.path = get_or<std::string>(j, "path", "", "output");
    return o;
}

json to_j(const OutputConfig& o) { return json{{"format", o.format}, {"path", o.path}}; }

NuData nu_from(const json& j, const std::string& w) {
    allow_keys(j, {"lattice", "values"}, w);
    NuData d;
    if (j.contains("lattice")) {
        const json& l = j.at("lattice");
        allow_keys(l, {"shift", "step"}, w + ".lattice");
        NuLattice lat{rational_or(l, "shift", Rational(0), w + ".lattice"),
                      rational_or(l, "step", Rational(1), w + ".lattice")};
        if (lat.step <= 0) throw ConfigError(w + ".lattice.step: positive");
        d.lattice = lat;
    }
    if (j.contains("values"))
        for (const auto& v : j.at("values")) d.explicit_values.push_back(rational_from(v, w + ".values"));
    if (!d.lattice && d.explicit_values.empty()) throw ConfigError(w + ": give a lattice or explicit values");
    return d;
}

json to_j(const NuData& d) {
    json out = json::object();
    if (d.lattice) out["lattice"] = json{{"shift", to_j(d.lattice->shift)}, {"step", to_j(d.lattice->step)}};
    if (!d.explicit_values.empty()) {
        json arr = json::array();
        for (const auto& v : d.explicit_values) arr.push_back(to_j(v));
        out["values"] = arr;
    }
    return out;
}

BasisConfig basis_from(const json& j, const std::string& w, const ComplexSpec* outer = nullptr) {
    allow_keys(j, {"alpha", "F_exponent", "complex", "nu", "window", "lambda_per_nu"}, w);
    BasisConfig b;
    if (outer && outer->kind == ComplexKind::Dolbeault) b.complex = *outer;
    b.alpha = rational_or(j, "alpha", Rational(1), w);
    b.F_exponent = rational_or(j, "F_exponent", Rational(1), w);
    if (j.contains("complex")) b.complex = complex_from(j.at("complex"), w + ".complex");
    if (b.complex.kind != ComplexKind::Dolbeault) throw ConfigError(w + ".complex: Dolbeault bases only");
    if (!j.contains("nu")) throw ConfigError(w + ": missing 'nu'");
    b.nu = nu_from(j.at("nu"), w + ".nu");
    if (j.contains("window")) {
        const json& win = j.at("window");
        allow_keys(win, {"lo", "hi"}, w + ".window");
        b.window = NuWindow{rational_at(win, "lo", w + ".window"), rational_at(win, "hi", w + ".window")};
    }
    b.lambda_per_nu = rational_or(j, "lambda_per_nu", Rational(1), w);
    return b;
}

json to_j(const BasisConfig& b) {
    json out{{"alpha", to_j(b.alpha)},
             {"F_exponent", to_j(b.F_exponent)},
             {"complex", to_j(b.complex)},
             {"nu", to_j(b.nu)},
             {"lambda_per_nu", to_j(b.lambda_per_nu)}};
    if (b.window) out["window"] = json{{"lo", to_j(b.window->lo)}, {"hi", to_j(b.window->hi)}};
    return out;
}

SupertraceConfig supertrace_from(const json& j) {
    const std::string w = "supertrace";
    allow_keys(j, {"pieces", "grid"}, w);
    SupertraceConfig s;
    if (!j.contains("pieces") || !j.at("pieces").is_array() || j.at("pieces").empty())
        throw ConfigError("supertrace.pieces: expected a nonempty array");
    for (const auto& p : j.at("pieces")) {
        const std::string wp = "supertrace.pieces[]";
        allow_keys(p, {"todd", "canonical", "y", "invert"}, wp);
        CharacterPiece cp;
        if (!p.contains("todd")) throw ConfigError(wp + ": missing 'todd'");
        cp.todd = basis_from(p.at("todd"), wp + ".todd");
        if (p.contains("canonical")) cp.canonical = basis_from(p.at("canonical"), wp + ".canonical");
        cp.y = rational_or(p, "y", Rational(0), wp);
        cp.invert = get_or<bool>(p, "invert", false, wp);
        s.pieces.push_back(std::move(cp));
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        allow_keys(g, {"s", "theta"}, "supertrace.grid");
        s.s = get<std::vector<double>>(g, "s", "supertrace.grid");
        s.theta = get<std::vector<double>>(g, "theta", "supertrace.grid");
    }
    return s;
}

json to_j(const SupertraceConfig& s) {
    json arr = json::array();
    for (const auto& p : s.pieces) {
        json o{{"todd", to_j(p.todd)}, {"y", to_j(p.y)}, {"invert", p.invert}};
        if (p.canonical) o["canonical"] = to_j(*p.canonical);
        arr.push_back(o);
    }
    json out{{"pieces", arr}};
    if (!s.s.empty() || !s.theta.empty()) out["grid"] = json{{"s", s.s}, {"theta", s.theta}};
    return out;
}

VerifyConfig verify_from(const json& j) {
    const std::string w = "verify";
    allow_keys(j, {"which", "fixtures", "n", "star_B", "star_mu", "oracle2d", "mckean_singer"}, w);
    VerifyConfig v;
    v.which = get_or<std::string>(j, "which", "all", w);
    static const char* kinds[] = {"liouville", "pairing", "star", "oracle2d", "mckean-singer", "all"};
    if (std::none_of(std::begin(kinds), std::end(kinds), [&](const char* k) { return v.which == k; }))
        throw ConfigError("verify.which: unknown check '" + v.which + "'");
    if (j.contains("fixtures"))
        for (const auto& f : j.at("fixtures")) {
            const std::string wf = "verify.fixtures[]";
            allow_keys(f, {"B", "c", "mu", "right"}, wf);
            RadialFixtureConfig rf;
            rf.B = rational_at(f, "B", wf);
            rf.c = rational_or(f, "c", Rational(1), wf);
            rf.mu = get_or<double>(f, "mu", 0.0, wf);
            rf.right = get_or<std::string>(f, "right", "neumann", wf);
            if (rf.right != "neumann" && rf.right != "dirichlet") throw ConfigError(wf + ".right: neumann or dirichlet");
            v.fixtures.push_back(rf);
        }
    v.n = get_or<int>(j, "n", 10, w);
    if (v.n < 1 || v.n > 20) throw ConfigError("verify.n: 1..20");
    if (j.contains("star_B"))
        for (const auto& b : j.at("star_B")) v.star_B.push_back(rational_from(b, "verify.star_B"));
    v.star_mu = get_or<std::vector<double>>(j, "star_mu", v.star_mu, w);
    if (j.contains("oracle2d")) {
        const json& o = j.at("oracle2d");
        allow_keys(o, {"c", "cutoff", "Nx", "Ntheta"}, "verify.oracle2d");
        v.oracle_c = rational_or(o, "c", Rational(1), "verify.oracle2d");
        v.oracle_cutoff = get_or<int>(o, "cutoff", 6, "verify.oracle2d");
        v.grid.Nx = get_or<int>(o, "Nx", v.grid.Nx, "verify.oracle2d");
        v.grid.Ntheta = get_or<int>(o, "Ntheta", v.grid.Ntheta, "verify.oracle2d");
    }
    if (j.contains("mckean_singer")) {
        const json& m = j.at("mckean_singer");
        allow_keys(m, {"cutoff"}, "verify.mckean_singer");
        v.mckean_cutoff = get_or<int>(m, "cutoff", 6, "verify.mckean_singer");
    }
    return v;
}

json to_j(const VerifyConfig& v) {
    json fx = json::array();
    for (const auto& f : v.fixtures) fx.push_back(json{{"B", to_j(f.B)}, {"c", to_j(f.c)}, {"mu", f.mu}, {"right", f.right}});
    json sb = json::array();
    for (const auto& b : v.star_B) sb.push_back(to_j(b));
    return json{{"which", v.which},
                {"fixtures", fx},
                {"n", v.n},
                {"star_B", sb},
                {"star_mu", v.star_mu},
                {"oracle2d", json{{"c", to_j(v.oracle_c)}, {"cutoff", v.oracle_cutoff}, {"Nx", v.grid.Nx}, {"Ntheta", v.grid.Ntheta}}},
                {"mckean_singer", json{{"cutoff", v.mckean_cutoff}}}};
}

// output helpers

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

template <class F>
void parallel_for(std::size_t n, int jobs, F f) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(jobs, n); ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

bool compatible(const LinkMode& m, FormType t) {
    bool harmonic = std::all_of(m.mu.begin(), m.mu.end(), [](double v) { return v == 0.0; });
    bool ht = t == FormType::E || t == FormType::O;
    return harmonic == ht;
}

json section_json(const HarmonicSection& s) {
    json o;
    if (const auto* p = std::get_if<PowerProfile>(&s.profile)) o["profile"] = "x^" + to_string(p->a);
    else {
        const auto& e = std::get<ExpPowerProfile>(s.profile);
        o["profile"] = "exp(" + fmt(e.kappa) + " x^" + to_string(e.exponent) + ")";
    }
    if (s.mode) o["mode"] = s.mode->key;
    if (s.nu) o["nu"] = to_string(*s.nu);
    o["degree"] = s.degree;
    o["weight_exponent"] = to_string(s.weight_exponent);
    o["lambda_weight"] = to_string(s.lambda_weight);
    o["multiplicity"] = s.multiplicity;
    return o;
}

CohomologyBasis basis_of(const BasisConfig& b) {
    return dolbeault_harmonic_basis(b.alpha, b.nu, b.complex, PowerFunction::monomial(Rational(1), b.F_exponent),
                                    b.window, b.lambda_per_nu);
}

json basis_json(const CohomologyBasis& b) {
    json sections = json::array();
    for (const auto& s : b.sections) sections.push_back(section_json(s));
    json out{{"degree", b.degree}, {"rank", b.rank()}, {"sections", sections}};
    if (b.admissible_nu) {
        const auto& a = *b.admissible_nu;
        json an;
        switch (a.kind) {
            case AdmissibleNu::Kind::AllGE:
                an = json{{"kind", "all_ge"}, {"bound", to_string(a.bound)}, {"step", to_string(a.step)}};
                break;
            case AdmissibleNu::Kind::AllLE:
                an = json{{"kind", "all_le"}, {"bound", to_string(a.bound)}, {"step", to_string(a.step)}};
                break;
            case AdmissibleNu::Kind::Finite: {
                json vals = json::array();
                for (const auto& v : a.values) vals.push_back(to_string(v));
                an = json{{"kind", "finite"}, {"values", vals}};
                break;
            }
        }
        out["admissible_nu"] = an;
    }
    out["lambda_per_nu"] = to_string(b.lambda_per_nu);
    return out;
}

json report_json(const VerificationReport& r) {
    json rows = json::array();
    for (const auto& d : r.details)
        rows.push_back(json{{"label", d.label}, {"reference", d.reference}, {"value", d.value}, {"discrepancy", d.discrepancy}});
    json out{{"name", r.name},
             {"pass", r.pass},
             {"max_discrepancy", r.max_discrepancy},
             {"tolerance", r.tolerance},
             {"details", rows}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    allow_keys(j, {"space", "complex", "modes", "witten", "solver", "output", "cohomology", "supertrace", "verify"},
               "config");
    RunConfig c;
    if (!j.contains("space")) throw ConfigError("config: missing 'space'");
    c.space = space_from(j.at("space"));
    if (j.contains("complex")) c.complex = complex_from(j.at("complex"), "complex");
    if (j.contains("modes")) c.modes = modes_from(j.at("modes"));
    if (j.contains("witten") && !j.at("witten").is_null()) c.witten = witten_from(j.at("witten"));
    if (j.contains("solver")) c.solver = solver_from(j.at("solver"));
    if (j.contains("output")) c.output = output_from(j.at("output"));
    if (j.contains("cohomology")) c.cohomology = basis_from(j.at("cohomology"), "cohomology", &c.complex);
    if (j.contains("supertrace")) c.supertrace = supertrace_from(j.at("supertrace"));
    if (j.contains("verify")) c.verify = verify_from(j.at("verify"));
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const RunConfig& c) {
    json j{{"space", to_j(c.space)},
           {"complex", to_j(c.complex)},
           {"modes", to_j(c.modes)},
           {"solver", to_j(c.solver)},
           {"output", to_j(c.output)}};
    j["witten"] = c.witten ? to_j(*c.witten) : json(nullptr);
    if (c.cohomology) j["cohomology"] = to_j(*c.cohomology);
    if (c.supertrace) j["supertrace"] = to_j(*c.supertrace);
    if (c.verify) j["verify"] = to_j(*c.verify);
    return j.dump(2) + "\n";
}

std::vector<LinkMode> resolve_modes(const RunConfig& cfg) {
    if (cfg.modes.torus) {
        try {
            return torus_link_modes(cfg.space, cfg.modes.torus->degrees, cfg.modes.torus->mu_cutoff,
                                    cfg.modes.torus->with_nu);
        } catch (const ModelError& e) {
            throw ConfigError(std::string("modes.torus: ") + e.what());
        }
    }
    return cfg.modes.explicit_modes;
}

CommandResult cmd_spectrum(const RunConfig& cfg, int jobs) {
    struct Task {
        const LinkMode* mode;
        FormType type;
        std::optional<double> epsilon;
    };
    std::vector<LinkMode> modes = resolve_modes(cfg);
    std::vector<Task> tasks;
    for (const auto& m : modes)
        for (auto t : cfg.modes.form_types) {
            if (!compatible(m, t)) continue;
            if (cfg.witten)
                for (double e : cfg.witten->epsilons) tasks.push_back({&m, t, e});
            else
                tasks.push_back({&m, t, std::nullopt});
        }
    if (tasks.empty()) throw ConfigError("no (mode, form type) pair is compatible");
    if (cfg.witten) {
        double prev = 0.0;
        for (double e : cfg.witten->epsilons) {
            if (!(e > prev)) throw ConfigError("witten.epsilons: positive and ascending");
            prev = e;
        }
    }

    std::vector<Spectrum> results(tasks.size());
    const int n = cfg.solver.n_eigen;
    parallel_for(tasks.size(), jobs, [&](std::size_t i) {
        const Task& tk = tasks[i];
        SLProblem p = build_sl(cfg.space, *tk.mode, tk.type, cfg.complex);
        if (!tk.epsilon) {
            results[i] = eigenvalues_weighted(p, n, cfg.solver.mesh);
            return;
        }
        bool normal = tk.type == FormType::O || tk.type == FormType::T3 || tk.type == FormType::T4;
        int K = cfg.witten->K ? *cfg.witten->K : k_sign(normal);
        WittenDeformation d{MorseFunction::power_law(cfg.witten->c, cfg.witten->scale), *tk.epsilon, K};
        results[i] = solve_half_line(deformed_potential(liouville_transform(p), d, true), n, cfg.solver.mesh).spectrum;
    });

    std::ostringstream os;
    if (cfg.output.format == "csv") {
        os << "mode_key,form_type,index,lambda_sq,residual\n";
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            std::string key = tasks[i].mode->key;
            if (tasks[i].epsilon) key += ";eps=" + fmt(*tasks[i].epsilon);
            int idx = 0;
            for (const auto& e : results[i].entries)
                for (int k = 0; k < e.multiplicity; ++k)
                    os << key << ',' << to_string(tasks[i].type) << ',' << idx++ << ',' << fmt(e.lambda_sq) << ','
                       << fmt(e.residual) << '\n';
        }
    } else {
        json rows = json::array();
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            json ev = json::array();
            for (const auto& e : results[i].entries)
                ev.push_back(json{{"lambda_sq", e.lambda_sq}, {"multiplicity", e.multiplicity}, {"residual", e.residual}});
            json row{{"mode_key", tasks[i].mode->key}, {"form_type", to_string(tasks[i].type)}, {"eigenvalues", ev},
                     {"mesh", json{{"N", results[i].mesh.N}, {"grading", results[i].mesh.grading},
                                   {"x_min", results[i].mesh.x_min}, {"x_start", results[i].mesh.x_start}}}};
            if (tasks[i].epsilon) row["epsilon"] = *tasks[i].epsilon;
            rows.push_back(row);
        }
        os << json{{"spectra", rows}}.dump(2) << '\n';
    }
    return {0, os.str()};
}

CommandResult cmd_cohomology(const RunConfig& cfg) {
    json out;
    if (cfg.complex.kind == ComplexKind::DeRham) {
        std::vector<LinkMode> harmonic;
        for (const auto& m : resolve_modes(cfg))
            if (std::all_of(m.mu.begin(), m.mu.end(), [](double v) { return v == 0.0; })) harmonic.push_back(m);
        json degs = json::array();
        for (const auto& [q, b] : derham_harmonic_basis(cfg.space, harmonic, cfg.complex)) degs.push_back(basis_json(b));
        out = json{{"complex", "de_rham"}, {"degrees", degs}};
    } else {
        if (!cfg.cohomology) throw ConfigError("Dolbeault cohomology needs a 'cohomology' basis section");
        out = json{{"complex", "dolbeault"}, {"basis", basis_json(basis_of(*cfg.cohomology))}};
    }
    return {0, out.dump(2) + "\n"};
}

CommandResult cmd_supertrace(const RunConfig& cfg) {
    if (!cfg.supertrace) throw ConfigError("supertrace command needs a 'supertrace' section");
    std::vector<Character> chars;
    json pieces = json::array();
    for (const auto& p : cfg.supertrace->pieces) {
        Character ch = local_character(basis_of(p.todd));
        if (p.canonical) ch = chi_y(ch, local_character(basis_of(*p.canonical)), p.y);
        if (p.invert) ch = ch.inverted();
        pieces.push_back(ch.str());
        chars.push_back(ch);
    }
    Character total = sum_and_simplify(chars);
    json out{{"character", total.str()}, {"pieces", pieces}};
    json grid = json::array();
    for (double s : cfg.supertrace->s)
        for (double th : cfg.supertrace->theta) {
            auto v = total.evaluate(s, th);
            grid.push_back(json{{"s", s}, {"theta", th}, {"re", v.real()}, {"im", v.imag()}});
        }
    if (!grid.empty()) out["grid"] = grid;
    return {0, out.dump(2) + "\n"};
}

CommandResult cmd_verify(const RunConfig& cfg, int jobs) {
    VerifyConfig v = cfg.verify ? *cfg.verify : VerifyConfig{};
    const Mesh& mesh = cfg.solver.mesh;
    auto want = [&](const char* k) { return v.which == "all" || v.which == k; };
    std::vector<std::function<VerificationReport()>> checks;
    auto fixture = [](const RadialFixtureConfig& f) {
        return radial_fixture(f.B, f.c, f.mu,
                              f.right == "dirichlet" ? RobinCondition::dirichlet() : RobinCondition::neumann());
    };
    for (const auto& f : v.fixtures) {
        if (want("liouville")) checks.push_back([=] { return verify_liouville(fixture(f), v.n, mesh); });
        if (want("pairing")) checks.push_back([=] { return verify_susy_pairing(fixture(f), v.n, mesh); });
    }
    if (want("star"))
        for (const auto& B : v.star_B)
            for (double mu : v.star_mu)
                checks.push_back([=] {
                    RealPowerFunction V;
                    if (mu != 0.0) V.add_term(mu * mu, Rational(-2));
                    return verify_star_duality(B, V, 8, mesh);
                });
    if (want("oracle2d"))
        checks.push_back([=] { return verify_2d_oracle(v.oracle_c, v.oracle_cutoff, v.grid); });
    if (want("mckean-singer"))
        checks.push_back([=] {
            McKeanSingerFixture fx;
            fx.mode_cutoff = v.mckean_cutoff;
            return verify_mckean_singer(fx, mesh);
        });
    if (checks.empty()) throw ConfigError("verify: nothing to check");

    std::vector<VerificationReport> reports(checks.size());
    parallel_for(checks.size(), jobs, [&](std::size_t i) { reports[i] = checks[i](); });
    bool ok = true;
    json arr = json::array();
    for (const auto& r : reports) {
        ok = ok && r.pass;
        arr.push_back(report_json(r));
    }
    return {ok ? 0 : 1, json{{"pass", ok}, {"reports", arr}}.dump(2) + "\n"};
}

CommandResult run_command(const std::string& verb, const RunConfig& cfg, int jobs) {
    try {
        if (verb == "spectrum") return cmd_spectrum(cfg, jobs);
        if (verb == "cohomology") return cmd_cohomology(cfg);
        if (verb == "supertrace") return cmd_supertrace(cfg);
        if (verb == "verify") return cmd_verify(cfg, jobs);
        return {2, "unknown command " + verb + "\n"};
    } catch (const ConfigError& e) {
        return {2, std::string("config error: ") + e.what() + "\n"};
    } catch (const ModelError& e) {
        return {2, std::string("model error: ") + e.what() + "\n"};
    } catch (const SusyFailure& e) {
        return {1, std::string("pairing failure: ") + e.what() + "\n"};
    } catch (const NumericError& e) {
        return {3, std::string("numeric failure: ") + e.what() + "\n"};
    }
}

}  // namespace conespec
