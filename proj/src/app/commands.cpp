#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dwb/app.hpp"
#include "dwb/darboux.hpp"

namespace dwb {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchema = 1;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

const char* yes_no(bool v) { return v ? "true" : "false"; }

std::vector<Family> families_from(const std::string& which) {
    if (which == "both") return {Family::MinusY, Family::PlusY};
    const auto f = parse_family(which);
    if (!f) throw UsageError("unknown family: " + which);
    return {*f};
}

Family family_from(const std::string& which) {
    const auto f = parse_family(which);
    if (!f) throw UsageError("unknown family: " + which);
    return *f;
}

BValue parse_b(const std::string& text) {
    if (text == "irrational") return IrrationalB{};
    return Rat::parse(text);
}

unsigned thread_cap() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("DWB_THREADS");
    if (env == nullptr || *env == '\0') return hw;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw UsageError(std::string("DWB_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<unsigned>(v);
}

template <class Fn>
void parallel_for(std::size_t count, Fn fn) {
    const std::size_t workers = std::min<std::size_t>(thread_cap(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

void emit(std::ostream& out, const std::string& format, const json& doc, const std::string& text) {
    if (format == "json")
        out << doc.dump(2) << '\n';
    else
        out << text;
}

// curve ----------------------------------------------------------------

struct CurveArgs {
    unsigned n = 1;
    std::string family = "minus";
    std::string format = "text";
};

int cmd_curve(const CurveArgs& a, std::ostream& out) {
    const Family fam = family_from(a.family);
    const InvariantCurve c = build_invariant_curve(a.n, fam);
    const bool zero = verify_invariance(c, build_system(a.n, fam)).is_zero();

    json doc;
    doc["schema"] = kSchema;
    doc["command"] = "curve";
    doc["n"] = a.n;
    doc["family"] = to_string(fam);
    doc["F"] = c.F.str();
    doc["K"] = render_affine(c.K);
    doc["residual_is_zero"] = zero;
    doc["pass"] = zero;

    std::ostringstream text;
    text << "n = " << a.n << "\nfamily = " << to_string(fam) << "\nF = " << c.F.str()
         << "\nK = " << render_affine(c.K) << "\nresidual_is_zero: " << yes_no(zero) << '\n';
    emit(out, a.format, doc, text.str());
    return zero ? kExitOk : kExitCheckFailed;
}

// verify ---------------------------------------------------------------

struct VerifyArgs {
    unsigned n_max = 1;
    std::string family = "both";
    std::string format = "text";
    bool perturb_cofactor = false;
    bool perturb_curve = false;
    unsigned samples = 200;
    unsigned nu_max = 50;
    std::uint64_t seed = 20240611;
    bool timing = false;
};

struct VerifyRow {
    unsigned n = 0;
    Family family = Family::MinusY;
    bool invariance = false;
    bool euler_y = false;
    std::optional<bool> lemma2;  // MinusY only
    std::string F;
    std::string K;
    double seconds = 0.0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Family> fams = families_from(a.family);

    std::vector<VerifyRow> rows;
    for (unsigned n = 1; n <= a.n_max; ++n)
        for (Family f : fams) rows.push_back({n, f, false, false, std::nullopt, {}, {}, 0.0});

    parallel_for(rows.size(), [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        VerifyRow& r = rows[i];
        InvariantCurve c = build_invariant_curve(r.n, r.family);
        if (a.perturb_cofactor) c.K += XYPoly(1);
        if (a.perturb_curve) c.F += XYPoly::term(BPoly(1), r.n, 0);
        r.invariance = verify_invariance(c, build_system(r.n, r.family)).is_zero();
        r.euler_y = euler_y_residual(c.F, r.n).is_zero();
        if (r.family == Family::MinusY) r.lemma2 = lemma2_residual(c.F, r.n).is_zero();
        r.F = c.F.str();
        r.K = render_affine(c.K);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });

    std::mt19937_64 rng(a.seed);
    std::uniform_int_distribution<long> num(-100, 100);
    std::uniform_int_distribution<long> den(1, 100);
    unsigned failures = 0;
    for (unsigned s = 0; s < a.samples; ++s) {
        const long p = num(rng);
        const long q = den(rng);
        const Rat c{mpz_class(p), mpz_class(q)};
        for (unsigned v = 1; v <= a.nu_max; ++v)
            if (!pochhammer_lemma_residual(c, v).is_zero()) ++failures;
    }
    const bool poch_pass = failures == 0;

    bool pass = poch_pass;
    json jrows = json::array();
    std::ostringstream text;
    for (const auto& r : rows) {
        const bool ok = r.invariance && r.euler_y && r.lemma2.value_or(true);
        pass = pass && ok;
        json row;
        row["n"] = r.n;
        row["family"] = to_string(r.family);
        row["residual_is_zero"] = r.invariance;
        row["invariance"] = r.invariance;
        row["F_rendered"] = r.F;
        row["K_rendered"] = r.K;
        row["euler_y"] = r.euler_y;
        row["lemma2"] = r.lemma2 ? json(*r.lemma2) : json(nullptr);
        row["pass"] = ok;
        if (a.timing) row["wall_time_s"] = r.seconds;
        jrows.push_back(row);
        text << "n=" << r.n << " family=" << to_string(r.family) << " invariance=" << yes_no(r.invariance)
             << " euler_y=" << yes_no(r.euler_y) << " lemma2=" << (r.lemma2 ? yes_no(*r.lemma2) : "n/a") << '\n';
    }
    text << "pochhammer_lemma samples=" << a.samples << " nu_max=" << a.nu_max << " seed=" << a.seed
         << " failures=" << failures << '\n';
    text << "pass: " << yes_no(pass) << '\n';

    json doc;
    doc["schema"] = kSchema;
    doc["command"] = "verify";
    doc["n_max"] = a.n_max;
    json jf = json::array();
    for (Family f : fams) jf.push_back(to_string(f));
    doc["families"] = jf;
    doc["perturbation"] = a.perturb_cofactor && a.perturb_curve ? "cofactor+curve"
                        : a.perturb_cofactor                    ? "cofactor"
                        : a.perturb_curve                       ? "curve"
                                                                : "none";
    doc["rows"] = jrows;
    doc["pochhammer_lemma"] = {{"samples", a.samples}, {"nu_max", a.nu_max}, {"seed", a.seed},
                               {"failures", failures}, {"pass", poch_pass}};
    doc["pass"] = pass;
    if (a.timing) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        doc["wall_time_s"] = secs;
        text << "wall_time_s = " << secs << '\n';
    }
    emit(out, a.format, doc, text.str());
    return pass ? kExitOk : kExitCheckFailed;
}

// darboux --------------------------------------------------------------

struct DarbouxArgs {
    unsigned n = 1;
    std::string family = "minus";
    std::string format = "text";
    std::optional<std::string> b;
};

std::string tuple_str(const std::vector<mpz_class>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s + ")";
}

int cmd_darboux(const DarbouxArgs& a, std::ostream& out) {
    const Family fam = family_from(a.family);
    std::optional<BValue> bval;
    if (a.b) bval = parse_b(*a.b);

    const DarbouxQuadruple quad = standard_quadruple(a.n, fam);
    const auto kernel = solve_cofactor_kernel(quad);
    bool pass = kernel.size() == 1;

    json doc;
    doc["schema"] = kSchema;
    doc["command"] = "darboux";
    doc["n"] = a.n;
    doc["family"] = to_string(fam);
    doc["kernel_dimension"] = kernel.size();
    json jk = json::array();
    for (const auto& v : kernel) jk.push_back(v.str());
    doc["kernel"] = jk;

    std::ostringstream text;
    text << "n = " << a.n << "\nfamily = " << to_string(fam) << "\nkernel_dimension = " << kernel.size() << '\n';
    for (const auto& v : kernel) text << "kernel = " << v.str() << '\n';

    if (!kernel.empty()) {
        const FirstIntegral H = assemble_first_integral(quad, kernel.front());
        doc["H"] = H.str();
        text << "H = " << H.str() << '\n';
        if (bval) {
            const Rationality r = classify_rationality(kernel.front(), *bval);
            if (const auto* ri = std::get_if<RationalIntegral>(&r)) {
                const Rat& b0 = std::get<Rat>(*bval);
                const auto cof = quad.cofactors();
                const bool cancels = specialized_combination(cof, ri->exponents, b0).is_zero();
                pass = pass && cancels;
                std::vector<std::string> ex;
                for (const auto& e : ri->exponents) ex.push_back(e.get_str());
                doc["b"] = b0.str();
                doc["rationality"] = "Rational";
                doc["exponents"] = ex;
                doc["scale"] = ri->scale.get_str();
                doc["combination_is_zero"] = cancels;
                text << "b = " << b0.str() << "\nrationality = Rational\nexponents = " << tuple_str(ri->exponents)
                     << "\ncombination_is_zero: " << yes_no(cancels) << '\n';
            } else {
                doc["b"] = "irrational";
                doc["rationality"] = "NonRational";
                text << "b = irrational\nrationality = NonRational\n";
            }
        }
    } else if (bval) {
        pass = false;
    }
    doc["pass"] = pass;
    text << "pass: " << yes_no(pass) << '\n';
    emit(out, a.format, doc, text.str());
    return pass ? kExitOk : kExitCheckFailed;
}

// simulate -------------------------------------------------------------

struct SimulateArgs {
    unsigned n = 1;
    std::string family = "minus";
    std::string format = "text";
    std::string b = "0";
    std::string x0;
    std::optional<std::string> y0;
    double t_end = 5.0;
    double h = 1e-3;
    double tol = 1e-6;
    std::optional<std::string> out;
    std::optional<std::string> plot;
    bool timing = false;
};

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open " + path + " for writing");
    f << body;
    if (!f) throw UsageError("failed writing " + path);
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const Family fam = family_from(a.family);
    const BValue bv = parse_b(a.b);
    if (std::holds_alternative<IrrationalB>(bv)) throw UsageError("simulate needs a numeric --b");
    const Rat b0 = std::get<Rat>(bv);
    if (!(a.h > 0.0) || !std::isfinite(a.h)) throw UsageError("--h must be positive");
    if (!(a.t_end > 0.0) || !std::isfinite(a.t_end)) throw UsageError("--t-end must be positive");
    const Real x0 = to_real(Rat::parse(a.x0));

    const InvariantCurve curve = build_invariant_curve(a.n, fam);
    const NumericSystem sys = specialize_system(build_system(a.n, fam), b0);

    Real y0;
    bool on_curve_start = !a.y0.has_value();
    if (a.y0)
        y0 = to_real(Rat::parse(*a.y0));
    else
        y0 = solve_on_curve(curve, b0, x0);

    const Trajectory tr = integrate(sys, x0, y0, a.t_end, a.h);
    const DarbouxQuadruple quad = standard_quadruple(a.n, fam);
    const auto kernel = solve_cofactor_kernel(quad);
    const FirstIntegral H = assemble_first_integral(quad, kernel.at(0));
    const AuditResult res = audit_detailed(curve, H, tr, sys);
    const ConservationReport& rep = res.report;
    if (!on_curve_start) on_curve_start = real_abs(res.series.F_residual.front()) <= a.tol;

    // the degree drop is reported first by the audit
    for (const auto& r : rep.reasons) err << "warning: degenerate: " << r << '\n';

    const bool f_ok = !on_curve_start || rep.max_abs_F_residual < a.tol || rep.degenerate;
    const bool h_ok = rep.max_logH_drift < a.tol || rep.degenerate;
    const bool pass = f_ok && h_ok;

    if (a.out) {
        std::string csv = "t,x,y,F_resid,logH\n";
        for (std::size_t k = 0; k < tr.states.size(); ++k)
            csv += format_real(tr.times[k]) + ',' + format_real(tr.states[k][0]) + ',' +
                   format_real(tr.states[k][1]) + ',' + format_real(res.series.F_residual[k]) + ',' +
                   format_real(res.series.logH[k]) + '\n';
        write_file(*a.out, csv);
    }
    if (a.plot) {
        PhasePlot p;
        for (const auto& s : tr.states) p.trajectory.push_back({to_double(s[0]), to_double(s[1])});
        p.F = specialize_b(curve.F, b0);
        p.title = "n=" + std::to_string(a.n) + " family=" + std::string(to_string(fam)) + " b=" + b0.str();
        write_file(*a.plot, render_svg(p));
    }

    json doc;
    doc["schema"] = kSchema;
    doc["command"] = "simulate";
    doc["n"] = a.n;
    doc["family"] = to_string(fam);
    doc["b"] = b0.str();
    doc["x0"] = format_real(x0);
    doc["y0"] = format_real(y0);
    doc["start"] = on_curve_start ? "on_curve" : "off_curve";
    doc["t_end"] = a.t_end;
    doc["h"] = a.h;
    doc["method"] = tr.method;
    doc["samples"] = tr.states.size();
    doc["blowup"] = tr.blowup;
    doc["max_abs_F_residual"] = rep.max_abs_F_residual;
    doc["max_logH_drift"] = rep.max_logH_drift;
    doc["tolerance"] = a.tol;
    doc["degenerate"] = rep.degenerate;
    doc["reasons"] = rep.reasons;
    doc["pass"] = pass;

    std::ostringstream text;
    text << "n = " << a.n << "\nfamily = " << to_string(fam) << "\nb = " << b0.str() << "\nx0 = " << format_real(x0)
         << "\ny0 = " << format_real(y0) << "\nstart = " << (on_curve_start ? "on_curve" : "off_curve")
         << "\nsamples = " << tr.states.size() << "\nblowup = " << yes_no(tr.blowup)
         << "\nmax_abs_F_residual = " << sci(rep.max_abs_F_residual)
         << "\nmax_logH_drift = " << sci(rep.max_logH_drift) << "\ndegenerate = " << yes_no(rep.degenerate) << '\n';
    for (const auto& r : rep.reasons) text << "reason = " << r << '\n';
    text << "pass: " << yes_no(pass) << '\n';
    if (a.timing) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        doc["wall_time_s"] = secs;
        text << "wall_time_s = " << secs << '\n';
    }
    emit(out, a.format, doc, text.str());
    return pass ? kExitOk : kExitCheckFailed;
}

// report ---------------------------------------------------------------

struct ReportArgs {
    std::vector<std::string> paths;
    std::string format = "json";
    std::optional<std::string> out;
};

json load_fragment(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ReportParseError("cannot read fragment " + path);
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ReportParseError("malformed fragment " + path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("command") || !doc["command"].is_string() || !doc.contains("pass") ||
        !doc["pass"].is_boolean())
        throw ReportParseError("malformed fragment " + path + ": expected an object with 'command' and 'pass'");
    if (doc.contains("schema") && doc["schema"] != kSchema)
        throw ReportParseError("malformed fragment " + path + ": unsupported schema " + doc["schema"].dump());
    return doc;
}

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream& err) {
    json frags = json::array();
    bool pass = true;
    for (const auto& p : a.paths) {
        json d = load_fragment(p);
        pass = pass && d["pass"].get<bool>();
        frags.push_back(std::move(d));
    }
    if (a.paths.empty()) err << "warning: no fragments given; the empty report passes vacuously\n";

    json doc;
    doc["schema"] = kSchema;
    doc["command"] = "report";
    doc["fragments"] = frags;
    doc["pass"] = pass;

    std::ostringstream text;
    for (const auto& f : frags)
        text << f["command"].get<std::string>() << ": " << yes_no(f["pass"].get<bool>()) << '\n';
    text << "fragments = " << frags.size() << "\npass: " << yes_no(pass) << '\n';

    if (a.out) {
        write_file(*a.out, a.format == "json" ? doc.dump(2) + "\n" : text.str());
    } else {
        emit(out, a.format, doc, text.str());
    }
    return pass ? kExitOk : kExitCheckFailed;
}

void add_format(CLI::App* sub, std::string& target) {
    sub->add_option("--format", target, "Output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Darboux first integrals for a Lotka-Volterra family", "dwb"};
    app.set_help_flag("--help", "Print help and exit");
    app.require_subcommand(1);
    const auto positive = CLI::Range(1u, 1000000u);

    CurveArgs ca;
    auto* curve = app.add_subcommand("curve", "Build the invariant curve and check invariance exactly");
    curve->add_option("--n", ca.n, "Curve degree")->required()->check(positive);
    curve->add_option("--family", ca.family, "minus or plus")->check(CLI::IsMember({"minus", "plus"}));
    add_format(curve, ca.format);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Exact identity sweep for n = 1..n-max");
    verify->add_option("--n-max", va.n_max, "Largest degree")->required()->check(positive);
    verify->add_option("--family", va.family, "minus, plus or both")
        ->check(CLI::IsMember({"minus", "plus", "both"}));
    verify->add_flag("--perturb-cofactor", va.perturb_cofactor, "Add 1 to every cofactor (fault injection)");
    verify->add_flag("--perturb-curve", va.perturb_curve, "Add 1 to the x^n coefficient of F (fault injection)");
    verify->add_option("--samples", va.samples, "Random c values for the rising-factorial identity");
    verify->add_option("--nu-max", va.nu_max, "Largest nu for the rising-factorial identity")->check(positive);
    verify->add_option("--seed", va.seed, "Seed for the random sweep");
    verify->add_flag("--timing", va.timing, "Include wall time (output is then not reproducible)");
    add_format(verify, va.format);

    DarbouxArgs da;
    auto* darboux = app.add_subcommand("darboux", "Cofactor kernel, first integral and rationality");
    darboux->add_option("--n", da.n, "Curve degree")->required()->check(positive);
    darboux->add_option("--family", da.family, "minus or plus")->check(CLI::IsMember({"minus", "plus"}));
    darboux->add_option("--b", da.b, "p/q, an exact decimal, or 'irrational'");
    add_format(darboux, da.format);

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "Integrate one trajectory and audit it");
    simulate->add_option("--n", sa.n, "Curve degree")->required()->check(positive);
    simulate->add_option("--family", sa.family, "minus or plus")->check(CLI::IsMember({"minus", "plus"}));
    simulate->add_option("--b", sa.b, "Parameter value, p/q or exact decimal");
    simulate->add_option("--x0", sa.x0, "Initial x")->required();
    simulate->add_option("--y0", sa.y0, "Initial y (default: the curve point above x0)");
    simulate->add_option("--t-end", sa.t_end, "Final time");
    simulate->add_option("--h", sa.h, "RK4 step");
    simulate->add_option("--tol", sa.tol, "Tolerance for residual and drift");
    simulate->add_option("--out", sa.out, "Trajectory CSV path");
    simulate->add_option("--plot", sa.plot, "SVG phase plot path");
    simulate->add_flag("--timing", sa.timing, "Include wall time (output is then not reproducible)");
    add_format(simulate, sa.format);

    ReportArgs ra;
    auto* report = app.add_subcommand("report", "Merge JSON fragments into one report");
    report->add_option("paths", ra.paths, "Fragment files");
    report->add_option("--out", ra.out, "Write the merged report here instead of stdout");
    add_format(report, ra.format);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (curve->parsed()) return cmd_curve(ca, out);
        if (verify->parsed()) return cmd_verify(va, out);
        if (darboux->parsed()) return cmd_darboux(da, out);
        if (simulate->parsed()) return cmd_simulate(sa, out, err);
        if (report->parsed()) return cmd_report(ra, out, err);
    } catch (const ReportParseError& e) {
        err << "ReportParseError: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DegeneratePoint& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace dwb
