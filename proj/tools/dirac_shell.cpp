#include "diracshell/errors.hpp"
#include "diracshell/interaction.hpp"
#include "diracshell/resonance.hpp"
#include "diracshell/scattering.hpp"
#include "diracshell/specfun.hpp"
#include "diracshell/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace diracshell;

constexpr const char* kVersion = "dirac-shell 1.0.0";

// ---------------------------------------------------------------------------
// Output assembly: one table, echoed config, CSV or JSON serialization.

std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    std::map<std::string, json> config;     // echoed into output
    std::map<std::string, json> diagnostics;

    void row(std::initializer_list<json> cells) { rows.emplace_back(cells); }
};

std::string cell_text(const json& c) {
    if (c.is_string()) return c.get<std::string>();
    if (c.is_number_integer()) return std::to_string(c.get<long long>());
    if (c.is_number()) return fmt15(c.get<double>());
    return c.dump();
}

void write_table(const Table& t, const std::string& format,
                 const std::string& outPath) {
    std::ostringstream os;
    if (format == "json") {
        json doc;
        doc["config"] = json::object();
        for (const auto& [k, v] : t.config) doc["config"][k] = v;
        doc["columns"] = t.columns;
        doc["rows"] = json::array();
        for (const auto& r : t.rows) {
            json jr = json::array();
            for (const auto& c : r) jr.push_back(c);
            doc["rows"].push_back(jr);
        }
        doc["diagnostics"] = json::object();
        for (const auto& [k, v] : t.diagnostics) doc["diagnostics"][k] = v;
        os << doc.dump(2) << "\n";
    } else {
        os << "# " << kVersion << "\n";
        for (const auto& [k, v] : t.config)
            os << "# " << k << "=" << cell_text(v) << "\n";
        for (size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << t.columns[i];
        os << "\n";
        for (const auto& r : t.rows) {
            for (size_t i = 0; i < r.size(); ++i)
                os << (i ? "," : "") << cell_text(r[i]);
            os << "\n";
        }
    }
    if (outPath.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(outPath, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + outPath);
        f << os.str();
    }
}

// ---------------------------------------------------------------------------
// Shared option block.

struct Common {
    double m = 1.0, R = 1.0;
    int l = 0;
    double tol = 1e-11;
    int threads = 0;
    std::string out, format = "csv";
    std::string caseName; // empty = raw strengths
    std::string configPath; // consumed before parsing; kept for --help
    Strengths s;

    PhysicalParams params() const { return PhysicalParams{m, R, l}; }
};

void add_common(CLI::App* cmd, Common& c, bool withStrengths = true) {
    cmd->add_option("--m", c.m, "particle mass")->check(CLI::PositiveNumber);
    cmd->add_option("--R", c.R, "shell radius")->check(CLI::PositiveNumber);
    cmd->add_option("--l", c.l, "orbital index (j = l + 1/2)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol", c.tol, "root tolerance");
    cmd->add_option("--threads", c.threads, "parallelism cap");
    cmd->add_option("--out", c.out, "output file (default stdout)");
    cmd->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (withStrengths) {
        cmd->add_option("--case", c.caseName,
                        "preset: scalar, electrostatic, magnetic, delta, "
                        "delta_prime")
            ->check(CLI::IsMember({"scalar", "electrostatic", "magnetic",
                                   "delta", "delta_prime"}));
        cmd->add_option("--B", c.s.B, "scalar strength");
        cmd->add_option("--A0", c.s.A0, "electrostatic strength");
        cmd->add_option("--Ar", c.s.Ar, "radial vector strength");
        cmd->add_option("--Atheta", c.s.Atheta, "azimuthal vector strength");
    }
    cmd->add_option("--config", c.configPath,
                    "flat key=value config file; explicit flags win");
}

int thread_cap(const Common& c) {
    int cap = c.threads;
    if (const char* env = std::getenv("DIRAC_SHELL_THREADS"))
        if (int v = std::atoi(env); v > 0 && (cap <= 0 || v < cap)) cap = v;
    return cap > 0 ? cap : 1;
}

ShellCase parse_case(const std::string& name) {
    if (name == "scalar") return ShellCase::scalar;
    if (name == "electrostatic") return ShellCase::electrostatic;
    if (name == "magnetic") return ShellCase::magnetic;
    if (name == "delta") return ShellCase::delta;
    if (name == "delta_prime") return ShellCase::delta_prime;
    throw CLI::ValidationError("--case", "unknown case " + name);
}

Strengths effective_strengths(const Common& c) {
    if (c.caseName.empty()) return c.s;
    const ShellCase kind = parse_case(c.caseName);
    switch (kind) {
        case ShellCase::scalar: return canonical_case(kind, c.s.B);
        case ShellCase::electrostatic:
        case ShellCase::delta:
        case ShellCase::delta_prime: return canonical_case(kind, c.s.A0);
        case ShellCase::magnetic:
            return canonical_case(kind, c.s.Ar, c.s.Atheta);
    }
    return c.s;
}

double case_strength(ShellCase kind, const Strengths& s) {
    switch (kind) {
        case ShellCase::scalar: return s.B;
        case ShellCase::electrostatic:
        case ShellCase::delta:
        case ShellCase::delta_prime: return s.A0;
        case ShellCase::magnetic: return s.Ar; // unused by families
    }
    return 0.0;
}

void echo_common(Table& t, const Common& c) {
    t.config["m"] = c.m;
    t.config["R"] = c.R;
    t.config["l"] = c.l;
    if (!c.caseName.empty()) t.config["case"] = c.caseName;
    t.config["B"] = c.s.B;
    t.config["A0"] = c.s.A0;
    t.config["Ar"] = c.s.Ar;
    t.config["Atheta"] = c.s.Atheta;
    t.diagnostics["threads"] = thread_cap(c);
}

// "start:stop:count" -> inclusive linear grid.
std::vector<double> parse_grid(const std::string& text) {
    double a, b;
    int n;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
        throw CLI::ValidationError("grid", "expected start:stop:count, got " + text);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = (n == 1) ? a : a + (b - a) * i / (n - 1);
    return g;
}

// "re0:re1:im0:im1" -> box.
ComplexBox parse_box(const std::string& text) {
    ComplexBox box;
    char c1, c2, c3;
    std::istringstream is(text);
    if (!(is >> box.re_min >> c1 >> box.re_max >> c2 >> box.im_min >> c3 >>
          box.im_max) ||
        c1 != ':' || c2 != ':' || c3 != ':')
        throw CLI::ValidationError("box", "expected re0:re1:im0:im1, got " + text);
    return box;
}

// Expand "--config FILE" into "--key value" pairs appended after the other
// arguments, so values given explicitly on the command line take precedence.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
        } else {
            continue;
        }
        std::ifstream f(path);
        if (!f)
            throw CLI::ValidationError("--config", "cannot open " + path);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string()
                                          : s.substr(a, b - a + 1);
        };
        auto given = [&](const std::string& flag) {
            for (const std::string& a : args)
                if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
            return false;
        };
        std::string line;
        std::vector<std::string> extra;
        while (std::getline(f, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--config",
                                           "expected key=value, got " + line);
            const std::string flag = "--" + trim(line.substr(0, eq));
            if (given(flag)) continue;
            extra.push_back(flag);
            extra.push_back(trim(line.substr(eq + 1)));
        }
        args.insert(args.end(), extra.begin(), extra.end());
        break;
    }
    return args;
}

const char* class_name(RootClass c) {
    switch (c) {
        case RootClass::resonance: return "resonance";
        case RootClass::bound: return "bound";
        case RootClass::critical: return "critical";
        case RootClass::supercritical: return "supercritical";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

void run_lambda(const Common& c) {
    Table t;
    echo_common(t, c);
    const Strengths s = effective_strengths(c);
    if (permeability(s)) {
        const LambdaParams lam = lambda_from_strengths(s);
        t.columns = {"phi", "a", "b", "c", "d", "det", "permeable"};
        t.row({lam.phi, lam.a, lam.b, lam.c, lam.d, lam.det(), 1});
    } else {
        const BoundaryCondition bc = boundary_conditions_impermeable(s);
        t.columns = {"side", "alpha", "beta", "permeable"};
        t.row({"inner", bc.inner[0], bc.inner[1], 0});
        t.row({"outer", bc.outer[0], bc.outer[1], 0});
        t.diagnostics["note"] = "impermeable wall: alpha*phi1 + beta*phi2 = 0";
    }
    write_table(t, c.format, c.out);
}

// Apply a sweep token "NAME=start:stop:count" to a strengths copy.
struct Sweep {
    std::string field;
    std::vector<double> values;
};

Sweep parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--sweep", "expected NAME=start:stop:count");
    Sweep sw;
    sw.field = text.substr(0, eq);
    if (sw.field != "B" && sw.field != "A0" && sw.field != "Ar" &&
        sw.field != "Atheta")
        throw CLI::ValidationError("--sweep", "unknown strength " + sw.field);
    sw.values = parse_grid(text.substr(eq + 1));
    return sw;
}

Strengths with_field(Strengths s, const std::string& field, double v) {
    if (field == "B") s.B = v;
    else if (field == "A0") s.A0 = v;
    else if (field == "Ar") s.Ar = v;
    else s.Atheta = v;
    return s;
}

void run_bound(const Common& c, const std::string& sweepText) {
    Table t;
    echo_common(t, c);
    t.columns = {"strength", "E", "l"};
    const PhysicalParams par = c.params();
    int skipped = 0;

    auto emit = [&](double strengthLabel, const Strengths& s) {
        if (!permeability(s)) { ++skipped; return; }
        const LambdaParams lam = lambda_from_strengths(s);
        for (const BoundState& bs : bound_states(par, lam, 2000, c.tol))
            t.row({strengthLabel, bs.E, par.l});
    };

    if (sweepText.empty()) {
        Strengths s = effective_strengths(c);
        // Preset cases keep both coupled fields in step with --sweep only;
        // a single evaluation just uses the flags as given.
        emit(c.caseName.empty() ? 0.0
                                : case_strength(parse_case(c.caseName), s),
             s);
    } else {
        const Sweep sw = parse_sweep(sweepText);
        t.config["sweep"] = sw.field;
        for (double v : sw.values) {
            Strengths s = c.caseName.empty()
                              ? with_field(c.s, sw.field, v)
                              : [&] {
                                    Common cv = c;
                                    cv.s = with_field(cv.s, sw.field, v);
                                    return effective_strengths(cv);
                                }();
            emit(v, s);
        }
    }
    if (skipped) t.diagnostics["impermeable_points_skipped"] = skipped;
    write_table(t, c.format, c.out);
}

void run_critical(const Common& c) {
    Table t;
    echo_common(t, c);
    t.columns = {"condition", "strength", "exists"};
    const PhysicalParams par = c.params();
    const ShellCase kind = parse_case(c.caseName);
    auto emit = [&](const char* cond, const std::vector<double>& vals) {
        if (vals.empty()) {
            t.row({cond, 0.0, 0});
            return;
        }
        for (double v : vals) t.row({cond, v, 1});
    };
    switch (kind) {
        case ShellCase::scalar:
            emit("critical", scalar_critical_strengths(par));
            emit("supercritical", scalar_supercritical_strengths(par));
            break;
        case ShellCase::electrostatic:
            emit("critical", electro_critical_strengths(par));
            emit("supercritical", electro_supercritical_strengths(par));
            break;
        case ShellCase::delta:
            if (par.l > 0) emit("critical", {-par.l / (2.0 * par.m * par.R)});
            else t.row({"critical", 0.0, 0});
            t.row({"supercritical", 0.0, 0});
            break;
        case ShellCase::delta_prime:
            t.row({"critical", 0.0, 0});
            emit("supercritical", {(par.l + 1) / (2.0 * par.m * par.R)});
            break;
        case ShellCase::magnetic:
            t.row({"critical", 0.0, 0});
            t.row({"supercritical", 0.0, 0});
            break;
    }
    write_table(t, c.format, c.out);
}

BoundaryCondition wall_for(const std::string& name) {
    if (name == "magnetic-a0")
        return boundary_conditions_impermeable({0, 0, 0, -2});
    if (name == "magnetic-ainf")
        return boundary_conditions_impermeable({0, 0, 0, 2});
    if (name == "scalar-plus")
        return boundary_conditions_impermeable({2, 0, 0, 0});
    if (name == "scalar-minus")
        return boundary_conditions_impermeable({-2, 0, 0, 0});
    if (name == "delta-limit") return delta_shell_limit_boundary();
    throw CLI::ValidationError(
        "--case", "confined cases: magnetic-a0, magnetic-ainf, scalar-plus, "
                  "scalar-minus, delta-limit (or raw impermeable strengths)");
}

void run_confined(const Common& c, const std::string& wallName, double emax,
                  const std::string& branchName) {
    Table t;
    echo_common(t, c);
    t.config["emax"] = emax;
    t.config["wall"] = wallName;
    t.columns = {"k", "E"};
    const PhysicalParams par = c.params();
    const BoundaryCondition bc =
        wallName.empty() ? boundary_conditions_impermeable(effective_strengths(c))
                         : wall_for(wallName);
    std::vector<double> levels;
    if (branchName == "particle" || branchName == "both")
        for (double e : confined_spectrum(bc, par, emax, Branch::particle))
            levels.push_back(e);
    if (branchName == "antiparticle" || branchName == "both")
        for (double e : confined_spectrum(bc, par, emax, Branch::antiparticle))
            levels.push_back(e);
    std::sort(levels.begin(), levels.end());
    int k = 0;
    for (double e : levels) t.row({++k, e});
    write_table(t, c.format, c.out);
}

void run_locus(const Common& c, const std::string& boxText, int nx, int ny) {
    Table t;
    echo_common(t, c);
    t.config["box"] = boxText;
    t.columns = {"branch", "E_R", "E_I"};
    const ResonanceFamily fam(parse_case(c.caseName), c.params());
    const LocusCurve curve = trace_locus(fam, parse_box(boxText), nx, ny);
    int b = 0;
    for (const auto& branch : curve.branches) {
        for (const auto& p : branch) t.row({b, p.real(), p.imag()});
        ++b;
    }
    t.diagnostics["branches"] = b;
    write_table(t, c.format, c.out);
}

void run_resonances(const Common& c, const std::string& boxText,
                    const std::string& sweepText, int nx, int ny) {
    Table t;
    echo_common(t, c);
    t.config["box"] = boxText;
    t.columns = {"strength", "E_R", "E_I", "class"};
    const PhysicalParams par = c.params();
    const ComplexBox box = parse_box(boxText);

    if (c.caseName.empty()) {
        const LambdaParams lam = lambda_from_strengths(effective_strengths(c));
        for (const Root& r : find_resonances(par, lam, box))
            t.row({0.0, r.E.real(), r.E.imag(), class_name(r.cls)});
        write_table(t, c.format, c.out);
        return;
    }
    const ShellCase kind = parse_case(c.caseName);
    const ResonanceFamily fam(kind, par);
    auto family_strength = [&](const Strengths& s) {
        if (kind != ShellCase::magnetic) return case_strength(kind, s);
        return std::fabs(lambda_from_strengths(s).a);
    };
    if (sweepText.empty()) {
        const double sv = family_strength(effective_strengths(c));
        for (const Root& r : find_resonances(fam, sv, box, nx, ny))
            t.row({sv, r.E.real(), r.E.imag(), class_name(r.cls)});
    } else {
        const Sweep sw = parse_sweep(sweepText);
        t.config["sweep"] = sw.field;
        // A sweep retraces nothing: the locus is strength-independent, so the
        // per-strength work is a cheap 1D solve along the continuation path.
        const double s1 = family_strength(effective_strengths([&] {
            Common cv = c;
            cv.s = with_field(cv.s, sw.field, sw.values.front());
            return cv;
        }()));
        const double s2 = family_strength(effective_strengths([&] {
            Common cv = c;
            cv.s = with_field(cv.s, sw.field, sw.values.back());
            return cv;
        }()));
        const ContinuationResult res = continuation(
            fam, s1, s2, int(sw.values.size()) - 1, box, nx, ny);
        for (const Trajectory& tr : res.trajectories)
            for (const auto& [s, r] : tr.points)
                t.row({s, r.E.real(), r.E.imag(), class_name(r.cls)});
        std::sort(t.rows.begin(), t.rows.end(),
                  [](const std::vector<json>& x, const std::vector<json>& y) {
                      if (x[0] != y[0]) return x[0].get<double>() < y[0].get<double>();
                      return x[1].get<double>() < y[1].get<double>();
                  });
    }
    write_table(t, c.format, c.out);
}

void run_continuation(const Common& c, const std::string& boxText,
                      const std::string& sweepText, int nx, int ny) {
    Table t;
    echo_common(t, c);
    t.config["box"] = boxText;
    const ShellCase kind = parse_case(c.caseName);
    const ResonanceFamily fam(kind, c.params());
    const Sweep sw = parse_sweep(sweepText);
    t.config["sweep"] = sw.field;
    const ContinuationResult res =
        continuation(fam, sw.values.front(), sw.values.back(),
                     int(sw.values.size()) - 1, parse_box(boxText), nx, ny);
    t.columns = {"kind", "trajectory", "strength", "E_R", "E_I", "class"};
    int id = 0;
    for (const Trajectory& tr : res.trajectories) {
        for (const auto& [s, r] : tr.points)
            t.row({"root", id, s, r.E.real(), r.E.imag(), class_name(r.cls)});
        ++id;
    }
    for (const CaptureEvent& ev : res.events)
        t.row({ev.capture ? "capture" : "emission", -1, ev.strength, ev.E, 0.0,
               ev.E > 0 ? "critical" : "supercritical"});
    write_table(t, c.format, c.out);
}

void run_timedelay(const Common& c, const std::string& gridText,
                   const std::string& method) {
    Table t;
    echo_common(t, c);
    t.config["E"] = gridText;
    t.config["method"] = method;
    t.columns = {"E", "tan_delta", "delta", "tau"};
    const PhysicalParams par = c.params();
    const std::vector<double> grid = parse_grid(gridText);
    for (double e : grid)
        if (std::fabs(e) <= par.m)
            throw CLI::ValidationError("--E", "grid intersects [-m, m]");
    const LambdaParams lam = lambda_from_strengths(effective_strengths(c));
    const std::vector<ScanPoint> scan = phase_shift_scan(par, lam, grid);
    for (const ScanPoint& p : scan) {
        double tau = p.tau;
        if (method == "fd")
            tau = wigner_time_delay(p.E, par, lam, TauMethod::finite_difference);
        t.row({p.E, p.tan_delta, p.delta, tau});
    }
    write_table(t, c.format, c.out);
}

// ---------------------------------------------------------------------------
// Figure presets (bundled reference data sets, m = 2, R = 1).

void run_figure(int n, const Common& base) {
    Common c = base;
    c.m = 2.0;
    c.R = 1.0;
    switch (n) {
        case 1: { // scalar bound-state energies vs B, several l
            Table t;
            c.caseName = "scalar";
            echo_common(t, c);
            t.config["figure"] = n;
            t.columns = {"strength", "E", "l"};
            for (int l = 0; l <= 2; ++l) {
                PhysicalParams par{c.m, c.R, l};
                for (int i = 0; i < 160; ++i) {
                    const double B = -8.0 + 7.95 * i / 159.0;
                    const Strengths s = canonical_case(ShellCase::scalar, B);
                    if (!permeability(s)) continue;
                    const LambdaParams lam = lambda_from_strengths(s);
                    for (const BoundState& bs : bound_states(par, lam))
                        t.row({B, bs.E, l});
                }
            }
            write_table(t, c.format, c.out);
            return;
        }
        case 2:
            c.caseName = "scalar";
            c.l = 1;
            run_locus(c, "-6:6:-2:0", 240, 120);
            return;
        case 3:
            c.caseName = "scalar";
            c.s.B = -1.0;
            c.l = 1;
            run_timedelay(c, "2.001:12:2000", "analytic");
            return;
        case 4: { // electrostatic bound-state energy vs A0
            c.caseName = "electrostatic";
            c.l = 2;
            run_bound(c, "A0=0.6:6:200");
            return;
        }
        case 5:
            c.caseName = "electrostatic";
            c.l = 2;
            run_resonances(c, "-6:6:-2:0", "A0=0.75:5.25:10", 240, 120);
            return;
        case 6:
            c.l = 4;
            run_confined(c, "magnetic-a0", 12.0, "both");
            return;
        case 7:
            c.caseName = "delta";
            c.l = 2;
            run_bound(c, "A0=-3:-0.55:200");
            return;
        case 8:
            c.caseName = "delta";
            c.l = 2;
            run_resonances(c, "-6:6:-2:0", "A0=-2:-0.5:7", 240, 120);
            return;
        case 9:
            c.caseName = "delta";
            c.s.A0 = -1.0;
            c.l = 2;
            run_timedelay(c, "2.001:12:2000", "analytic");
            return;
        default:
            throw CLI::ValidationError("figure", "preset must be 1..9");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of the planar Dirac equation with a "
                 "circular contact potential"};
    app.require_subcommand(1);

    Common cLambda, cBound, cCritical, cConfined, cRes, cCont, cLocus, cTau,
        cFig;
    std::string sweepText, boxText = "-6:6:-2:0", gridText, method = "analytic";
    std::string wallName, branchName = "both";
    std::string resSweep, contSweep, contBox = "-6:6:-2:0";
    double emax = 10.0;
    int nx = 240, ny = 120;
    int figureNo = 0;

    auto* lambdaCmd = app.add_subcommand("lambda", "matching matrix from strengths");
    add_common(lambdaCmd, cLambda);

    auto* boundCmd = app.add_subcommand("bound", "bound-state energies");
    add_common(boundCmd, cBound);
    boundCmd->add_option("--sweep", sweepText, "NAME=start:stop:count");

    auto* critCmd = app.add_subcommand("critical", "threshold strengths");
    add_common(critCmd, cCritical);

    auto* confCmd = app.add_subcommand("confined", "impermeable-wall spectrum");
    add_common(confCmd, cConfined);
    confCmd->get_option("--case")->clear();
    confCmd->add_option("--wall", wallName,
                        "magnetic-a0 | magnetic-ainf | scalar-plus | "
                        "scalar-minus | delta-limit");
    confCmd->add_option("--emax", emax, "upper |E| bound")->required();
    confCmd->add_option("--branch", branchName, "particle | antiparticle | both")
        ->check(CLI::IsMember({"particle", "antiparticle", "both"}));

    auto* resCmd = app.add_subcommand("resonances", "complex-energy roots");
    add_common(resCmd, cRes);
    resCmd->add_option("--box", boxText, "re0:re1:im0:im1");
    resCmd->add_option("--sweep", resSweep, "NAME=start:stop:count");
    resCmd->add_option("--nx", nx, "grid columns");
    resCmd->add_option("--ny", ny, "grid rows");

    auto* contCmd =
        app.add_subcommand("continuation", "root trajectories over a sweep");
    add_common(contCmd, cCont);
    contCmd->add_option("--box", contBox, "re0:re1:im0:im1");
    contCmd->add_option("--sweep", contSweep, "NAME=start:stop:count")
        ->required();

    auto* locusCmd = app.add_subcommand("locus", "strength-independent locus");
    add_common(locusCmd, cLocus);
    locusCmd->get_option("--case")->required();
    locusCmd->add_option("--box", boxText, "re0:re1:im0:im1");
    locusCmd->add_option("--nx", nx, "grid columns");
    locusCmd->add_option("--ny", ny, "grid rows");

    auto* tauCmd = app.add_subcommand("timedelay", "phase shift and time delay");
    add_common(tauCmd, cTau);
    tauCmd->add_option("--E", gridText, "start:stop:count")->required();
    tauCmd->add_option("--method", method, "analytic | fd")
        ->check(CLI::IsMember({"analytic", "fd"}));

    auto* figCmd = app.add_subcommand("figure", "bundled figure-data presets");
    add_common(figCmd, cFig);
    figCmd->add_option("number", figureNo, "preset 1..9")->required();

    try {
        std::vector<std::string> args = expand_config_args(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (*lambdaCmd) run_lambda(cLambda);
        else if (*boundCmd) run_bound(cBound, sweepText);
        else if (*critCmd) run_critical(cCritical);
        else if (*confCmd) run_confined(cConfined, wallName, emax, branchName);
        else if (*resCmd) run_resonances(cRes, boxText, resSweep, nx, ny);
        else if (*contCmd) run_continuation(cCont, contBox, contSweep, nx, ny);
        else if (*locusCmd) run_locus(cLocus, boxText, nx, ny);
        else if (*tauCmd) run_timedelay(cTau, gridText, method);
        else if (*figCmd) run_figure(figureNo, cFig);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
