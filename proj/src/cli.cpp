#include "dunkl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "dunkl/errors.hpp"
#include "dunkl/numerical_engine.hpp"
#include "dunkl/spectrum.hpp"
#include "dunkl/validation.hpp"

namespace dunkl::cli {

namespace {

using json = nlohmann::ordered_json;

// Grids used by commands that do not need the full spectrum resolution.
constexpr double kPropagatorL = 4.0;
constexpr int kPropagatorM = 20;
constexpr double kWavefunctionL = 6.0;
constexpr int kWavefunctionM = 300;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

const char* system_name(System s) { return s == System::free ? "free" : "harmonic"; }

System parse_system(const std::string& s) {
    if (s == "free") return System::free;
    if (s == "harmonic") return System::harmonic;
    throw std::invalid_argument("system must be 'free' or 'harmonic', got '" + s + "'");
}

json config_json(const RunConfig& c) {
    json j;
    j["system"] = system_name(c.system);
    if (c.nu) j["nu"] = *c.nu;
    j["hbar"] = c.hbar;
    j["mass"] = c.mass;
    j["omega"] = c.omega;
    if (c.time) j["time"] = *c.time;
    if (c.tau) j["tau"] = *c.tau;
    j["grid-L"] = c.grid_L;
    j["grid-M"] = c.grid_M;
    j["nmax"] = c.nmax;
    return j;
}

std::vector<double> number_list(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw std::invalid_argument("config key '" + key + "' must be a number or an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw std::invalid_argument("config key '" + key + "' must hold numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw std::invalid_argument("config key '" + key + "' must be a number");
    return v.get<double>();
}

// Values from the file take precedence over the command line.
void apply_config_file(const std::string& path, RunConfig& c) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "system") {
            if (!v.is_string()) throw std::invalid_argument("config key 'system' must be a string");
            c.system = parse_system(v.get<std::string>());
        } else if (key == "nu") c.nu = number(v, key);
        else if (key == "hbar") c.hbar = number(v, key);
        else if (key == "mass") c.mass = number(v, key);
        else if (key == "omega") c.omega = number(v, key);
        else if (key == "time") { c.time = number(v, key); c.tau.reset(); }
        else if (key == "tau") { c.tau = number(v, key); c.time.reset(); }
        else if (key == "xa") c.xa = number_list(v, key);
        else if (key == "xb") c.xb = number_list(v, key);
        else if (key == "grid-L") { c.grid_L = number(v, key); c.grid_given = true; }
        else if (key == "grid-M") {
            if (!v.is_number_integer()) throw std::invalid_argument("config key 'grid-M' must be an integer");
            c.grid_M = v.get<int>();
            c.grid_given = true;
        } else if (key == "nmax") {
            if (!v.is_number_integer()) throw std::invalid_argument("config key 'nmax' must be an integer");
            c.nmax = v.get<int>();
        } else if (key == "out") {
            if (!v.is_string()) throw std::invalid_argument("config key 'out' must be a string");
            c.out = v.get<std::string>();
        } else if (key == "format") {
            if (!v.is_string()) throw std::invalid_argument("config key 'format' must be a string");
            c.format = v.get<std::string>();
        } else if (key == "strict") {
            if (!v.is_boolean()) throw std::invalid_argument("config key 'strict' must be a boolean");
            c.strict = v.get<bool>();
        } else if (key == "tol") c.tol = number(v, key);
        else if (key == "only") {
            if (v.is_string()) c.only = {v.get<std::string>()};
            else if (v.is_array()) {
                c.only.clear();
                for (const auto& e : v) {
                    if (!e.is_string()) throw std::invalid_argument("config key 'only' must hold strings");
                    c.only.push_back(e.get<std::string>());
                }
            } else throw std::invalid_argument("config key 'only' must be a string or an array of strings");
        } else throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write output file '" + c.out + "'");
    f << text;
}

std::vector<double> grid_nodes(double L, int M) { return Grid(L, M).nodes(); }

int cmd_propagator(RunConfig c, std::ostream& out, std::ostream&) {
    if (!c.time && !c.tau) throw std::invalid_argument("propagator needs --time or --tau");
    if (!c.grid_given) {
        c.grid_L = kPropagatorL;
        c.grid_M = kPropagatorM;
    }
    const auto T = c.tau ? ComplexTime::euclidean(*c.tau) : ComplexTime::real_time(*c.time);
    const auto nodes = grid_nodes(c.grid_L, c.grid_M);
    const auto& xa = c.xa.empty() ? nodes : c.xa;
    const auto& xb = c.xb.empty() ? nodes : c.xb;
    const auto p = c.params();

    std::ostringstream s;
    json rows = json::array();
    if (c.format == "csv") s << "x_a,x_b,re_K,im_K\n";
    for (double a : xa) {
        for (double b : xb) {
            const complex k = full_kernel(b, a, T, p, c.system);
            if (c.format == "csv") s << num(a) << ',' << num(b) << ',' << num(k.real()) << ',' << num(k.imag()) << '\n';
            else rows.push_back({{"x_a", a}, {"x_b", b}, {"re_K", k.real()}, {"im_K", k.imag()}});
        }
    }
    if (c.format == "json") {
        json doc;
        doc["command"] = "propagator";
        doc["config"] = config_json(c);
        doc["rows"] = std::move(rows);
        s << doc.dump(2) << '\n';
    }
    emit(c, s.str(), out);
    return ok;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.system != System::harmonic) throw std::invalid_argument("spectrum is defined for the harmonic system only");
    const auto p = c.params();
    const int levels = c.nmax + 1;
    const auto even = ParityChannel::even(p.nu), odd = ParityChannel::odd(p.nu);
    const auto ge = grid_spectrum(even, p, c.grid_L, c.grid_M, levels, harmonic_potential(p));
    const auto go = grid_spectrum(odd, p, c.grid_L, c.grid_M, levels, harmonic_potential(p));

    std::vector<std::string> warnings = ge.warnings;
    warnings.insert(warnings.end(), go.warnings.begin(), go.warnings.end());
    for (const auto& w : warnings) err << "warning: " << w << '\n';

    std::ostringstream s;
    json rows = json::array();
    if (c.format == "csv") s << "n,parity,E_exact,E_grid,abs_dE\n";
    double worst = 0.0;
    for (int n = 0; n <= c.nmax; ++n) {
        for (const auto* ch : {&even, &odd}) {
            const double exact = energy(n, *ch, p);
            const double grid = (ch == &even ? ge : go).extrapolated[n];
            const double d = std::abs(grid - exact);
            worst = std::max(worst, d);
            if (c.format == "csv")
                s << n << ',' << ch->sign() << ',' << num(exact) << ',' << num(grid) << ',' << num(d) << '\n';
            else rows.push_back({{"n", n}, {"parity", ch->sign()}, {"E_exact", exact}, {"E_grid", grid}, {"abs_dE", d}});
        }
    }
    if (c.format == "json") {
        json doc;
        doc["command"] = "spectrum";
        doc["config"] = config_json(c);
        doc["rows"] = std::move(rows);
        doc["warnings"] = warnings;
        s << doc.dump(2) << '\n';
    }
    emit(c, s.str(), out);
    if (c.strict && !(worst <= c.tol)) {
        err << "error: max |E_grid - E_exact| = " << num(worst) << " exceeds --tol " << num(c.tol) << '\n';
        return numerical_failure;
    }
    return ok;
}

int cmd_wavefunctions(RunConfig c, std::ostream& out, std::ostream&) {
    if (!c.grid_given) {
        c.grid_L = kWavefunctionL;
        c.grid_M = kWavefunctionM;
    }
    const auto p = c.params();
    const auto nodes = c.xa.empty() ? grid_nodes(c.grid_L, c.grid_M) : c.xa;
    std::ostringstream s;
    json rows = json::array();
    if (c.format == "csv") s << "x,n,parity,psi\n";
    for (double x : nodes) {
        for (int sign : {1, -1}) {
            const auto psi = wavefunctions(c.nmax, ParityChannel(sign, p.nu), p, x);
            for (int n = 0; n <= c.nmax; ++n) {
                if (c.format == "csv") s << num(x) << ',' << n << ',' << sign << ',' << num(psi[n]) << '\n';
                else rows.push_back({{"x", x}, {"n", n}, {"parity", sign}, {"psi", psi[n]}});
            }
        }
    }
    if (c.format == "json") {
        json doc;
        doc["command"] = "wavefunctions";
        doc["config"] = config_json(c);
        doc["rows"] = std::move(rows);
        s << doc.dump(2) << '\n';
    }
    emit(c, s.str(), out);
    return ok;
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto results = run_checks(c.only);
    bool all = true;
    std::ostringstream s;
    json checks = json::array();
    if (c.format == "csv") s << "check,status,measured,tolerance\n";
    for (const auto& r : results) {
        all = all && r.passed;
        const char* status = r.passed ? "pass" : "fail";
        err << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured " << num(r.measured)
            << (r.at_least ? " >= " : " <= ") << num(r.tolerance) << (r.detail.empty() ? "" : "  (" + r.detail + ")") << '\n';
        if (c.format == "csv") s << r.name << ',' << status << ',' << num(r.measured) << ',' << num(r.tolerance) << '\n';
        else {
            json e;
            e["check"] = r.name;
            e["status"] = status;
            e["measured"] = std::isfinite(r.measured) ? json(r.measured) : json(nullptr);
            e["tolerance"] = r.tolerance;
            e["comparison"] = r.at_least ? ">=" : "<=";
            e["detail"] = r.detail;
            checks.push_back(std::move(e));
        }
    }
    if (c.format == "json") {
        json doc;
        doc["command"] = "validate";
        doc["passed"] = all;
        doc["checks"] = std::move(checks);
        s << doc.dump(2) << '\n';
    }
    emit(c, s.str(), out);
    return all ? ok : validation_failed;
}

}  // namespace

DunklParams RunConfig::params() const {
    DunklParams p;
    p.hbar = hbar;
    p.mass = mass;
    p.omega = system == System::free ? 0.0 : omega;
    p.nu = nu.value_or(0.0);
    return p;
}

void RunConfig::validate() const {
    if (command != "validate") {
        if (!nu) throw std::invalid_argument("--nu is required");
        if (!(*nu > -0.5) || !std::isfinite(*nu)) throw std::invalid_argument("nu must exceed -1/2");
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be positive");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be positive");
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be non-negative");
    if (system == System::harmonic && !(omega > 0.0)) throw std::invalid_argument("the harmonic system needs omega > 0");
    if (time && tau) throw std::invalid_argument("--time and --tau are mutually exclusive");
    if (tau && !(*tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (time && (*time == 0.0 || !std::isfinite(*time))) throw std::invalid_argument("time must be finite and non-zero");
    if (!(grid_L > 0.0) || !std::isfinite(grid_L)) throw std::invalid_argument("grid-L must be positive");
    if (grid_M < 2 || grid_M % 2 != 0) throw std::invalid_argument("grid-M must be an even integer >= 2");
    if (nmax < 0) throw std::invalid_argument("nmax must be non-negative");
    if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    for (double x : xa)
        if (!std::isfinite(x)) throw std::invalid_argument("xa values must be finite");
    for (double x : xb)
        if (!std::isfinite(x)) throw std::invalid_argument("xb values must be finite");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wigner-Dunkl quantum mechanics: kernels, spectra, wavefunctions and self-checks", "dunklqm"};
    app.require_subcommand(1);
    RunConfig c;
    std::string system = "harmonic";
    std::string config_path;
    double nu = 0.0, time = 0.0, tau = 0.0;

    std::vector<CLI::App*> subs;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--system", system, "free | harmonic")->check(CLI::IsMember({"free", "harmonic"}));
        s->add_option("--nu", nu, "Wigner parameter, > -1/2 (required except for validate)");
        s->add_option("--hbar", c.hbar, "Planck constant")->capture_default_str();
        s->add_option("--mass", c.mass, "particle mass")->capture_default_str();
        s->add_option("--omega", c.omega, "oscillator frequency")->capture_default_str();
        auto* t = s->add_option("--time", time, "real time T");
        auto* e = s->add_option("--tau", tau, "Euclidean time, T = -i tau");
        t->excludes(e);
        s->add_option("--xa", c.xa, "source points (default: grid nodes)")->expected(1, -1);
        s->add_option("--xb", c.xb, "target points (default: grid nodes)")->expected(1, -1);
        s->add_option("--grid-L", c.grid_L, "grid half-width L");
        s->add_option("--grid-M", c.grid_M, "positive nodes M (even), h = L / M");
        s->add_option("--nmax", c.nmax, "highest radial quantum number")->capture_default_str();
        s->add_option("--out", c.out, "output file (default: standard output)");
        s->add_option("--format", c.format, "csv | json")->capture_default_str();
        s->add_flag("--strict", c.strict, "fail (exit 3) when |E_grid - E_exact| > tol");
        s->add_option("--tol", c.tol, "tolerance for --strict")->capture_default_str();
        s->add_option("--config", config_path, "JSON file; its values override the flags");
        subs.push_back(s);
    };
    add_common(app.add_subcommand("propagator", "full-line kernel K(x_b, x_a; T) over the grid or a point list"));
    add_common(app.add_subcommand("spectrum", "exact and grid oscillator energies, both parities"));
    add_common(app.add_subcommand("wavefunctions", "oscillator eigenfunctions on the grid"));
    add_common(app.add_subcommand("validate", "run the invariant suite"));
    subs.back()->add_option("--only", c.only, "run only the named checks")->expected(1, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const auto active = app.get_subcommands();
        out << (active.empty() ? app.help() : active.front()->help());
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const auto active = app.get_subcommands();
        err << (active.empty() ? app.help() : active.front()->help());
        return config_error;
    }

    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    try {
        c.system = parse_system(system);
        if (sub->count("--nu")) c.nu = nu;
        if (sub->count("--time")) c.time = time;
        if (sub->count("--tau")) c.tau = tau;
        c.grid_given = sub->count("--grid-L") + sub->count("--grid-M") > 0;
        if (!config_path.empty()) apply_config_file(config_path, c);
        c.validate();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n' << sub->help();
        return config_error;
    }

    try {
        if (c.command == "propagator") return cmd_propagator(c, out, err);
        if (c.command == "spectrum") return cmd_spectrum(c, out, err);
        if (c.command == "wavefunctions") return cmd_wavefunctions(c, out, err);
        return cmd_validate(c, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    }
}

}  // namespace dunkl::cli
