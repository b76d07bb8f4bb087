// Command-line front end: problem files in, reports and machine-readable
// result files out.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "resonant/problem.hpp"

namespace {

using namespace resonant;
using Clock = std::chrono::steady_clock;

struct CommonOptions {
    std::optional<unsigned> deg_bound;
    std::optional<unsigned> truncation;
    std::optional<unsigned> precision;
    std::optional<std::string> variant;
    bool require_positivity = false;
    bool json_stdout = false;
    bool timings = false;
    std::string out_path;
};

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void apply_overrides(ProblemFile& p, const CommonOptions& opt) {
    if (opt.deg_bound) p.deg_bound = *opt.deg_bound;
    if (opt.truncation) p.truncation = *opt.truncation;
    // precedence: --precision flag, then the problem file, then the
    // environment default, then 256
    if (p.precision == 0) {
        p.precision = 256;
        if (const char* env = std::getenv("RESONANT_FORMS_PRECISION")) {
            try {
                p.precision = static_cast<unsigned>(std::stoul(env));
            } catch (...) {
                std::cerr << "warning: ignoring malformed RESONANT_FORMS_PRECISION\n";
            }
        }
    }
    if (opt.precision) p.precision = *opt.precision;
}

IterationVariant variant_of(const CommonOptions& opt) {
    if (!opt.variant || *opt.variant == "updated") return IterationVariant::updated;
    if (*opt.variant == "printed") return IterationVariant::printed;
    throw ParseError("--iteration-variant must be 'printed' or 'updated'");
}

Json result_skeleton(const char* command, const ProblemFile& p) {
    Json out = Json::object();
    out["schema"] = kResultSchema;
    out["version"] = kVersionString;
    out["command"] = command;
    out["problem"] = p.raw;
    return out;
}

void emit(const Json& result, const CommonOptions& opt) {
    if (!opt.out_path.empty()) write_result(result, opt.out_path);
    if (opt.json_stdout) std::cout << dump_result(result);
}

ResonanceBasis run_resonance(const ProblemFile& p) {
    ResonanceBasis basis = hilbert_basis(p.freq, p.deg_bound);
    check_P1(p.freq, basis, p.deg_bound);
    check_P2(p.freq, basis, p.deg_bound);
    return basis;
}

void print_resonance_summary(const ResonanceBasis& basis) {
    std::cout << "resonance basis (deg_bound " << basis.deg_bound << ", "
              << (basis.complete ? "complete" : "incomplete") << "):\n";
    for (const auto& g : basis.generators) {
        std::cout << "  R = (";
        for (size_t i = 0; i < g.size(); ++i) std::cout << (i ? "," : "") << g[i];
        std::cout << ")\n";
    }
    if (basis.generators.empty()) std::cout << "  (no nontrivial resonances)\n";
    std::cout << "P1: " << to_string(basis.p1);
    if (basis.p1_witness) {
        std::cout << "  witness J = (";
        for (size_t i = 0; i < basis.p1_witness->j.size(); ++i)
            std::cout << (i ? "," : "") << basis.p1_witness->j[i];
        std::cout << ") has two representations";
    }
    std::cout << "\nP2: " << to_string(basis.p2);
    if (basis.p2_witness) {
        std::cout << "  witness K = (";
        for (size_t i = 0; i < basis.p2_witness->k.size(); ++i)
            std::cout << (i ? "," : "") << basis.p2_witness->k[i];
        std::cout << "), direction " << basis.p2_witness->direction + 1
                  << (basis.p2_witness->representable ? " (ambiguous)" : " (not representable)");
    }
    std::cout << "\n";
}

int positivity_exit(const ResonanceBasis& basis, bool strict) {
    bool ok = basis.p1 == Verdict::holds && basis.p2 == Verdict::holds;
    return (!ok && strict) ? 2 : 0;
}

int cmd_resonance(const std::string& path, const CommonOptions& opt, bool strict) {
    ProblemFile p = ProblemFile::load(path);
    apply_overrides(p, opt);
    set_precision_bits(p.precision);
    auto t0 = Clock::now();
    ResonanceBasis basis = run_resonance(p);
    Json result = result_skeleton(strict ? "check-positivity" : "resonance", p);
    result["resonance"] = resonance_to_json(basis);
    Json meta = Json::object();
    meta["precision"] = p.precision;
    meta["deg_bound"] = p.deg_bound;
    if (opt.timings) meta["timing_ms"] = ms_since(t0);
    result["meta"] = std::move(meta);
    emit(result, opt);
    if (!opt.json_stdout) print_resonance_summary(basis);
    return positivity_exit(basis, strict || opt.require_positivity);
}

struct NormalizeRun {
    ProblemFile problem;
    ResonanceBasis basis;
    SolverContext ctx;
    Derivation input;
    NormalFormResult nf;
};

NormalizeRun run_normalize(const std::string& path, const CommonOptions& opt,
                           std::optional<NormalFormMode> mode_override) {
    ProblemFile p = ProblemFile::load(path);
    apply_overrides(p, opt);
    set_precision_bits(p.precision);
    ResonanceBasis basis = run_resonance(p);
    NormalFormMode mode = mode_override.value_or(p.mode);
    SolverContext ctx = SolverContext::make(p.freq, basis, p.truncation, p.mu_count, mode, variant_of(opt));
    Derivation X = p.build_field(ctx.ring);
    if (mode == NormalFormMode::versal) X = sum_deformation(X);
    NormalFormResult nf = lie_iteration(ctx, X);
    return NormalizeRun{std::move(p), std::move(basis), std::move(ctx), std::move(X), std::move(nf)};
}

int cmd_normalize(const std::string& path, const CommonOptions& opt) {
    auto t0 = Clock::now();
    NormalizeRun run = run_normalize(path, opt, std::nullopt);
    Json result = result_skeleton("normalize", run.problem);
    result["resonance"] = resonance_to_json(run.basis);
    result["normal_form"] = normal_form_to_json(run.ctx, run.nf);
    Json meta = Json::object();
    meta["precision"] = run.problem.precision;
    meta["truncation"] = run.problem.truncation;
    if (opt.timings) meta["timing_ms"] = ms_since(t0);
    result["meta"] = std::move(meta);
    emit(result, opt);
    if (!opt.json_stdout) {
        std::cout << "mode: " << to_string(run.ctx.mode) << ", variant: " << to_string(run.ctx.variant)
                  << "\nsteps: " << run.nf.steps << ", generators: " << run.nf.generators.size()
                  << "\nconjugacy residual: " << bf_to_decimal(run.nf.residual, 6) << "\n";
        Derivation restored = restore_u_tags(run.ctx, run.nf.normal_form);
        for (unsigned i = 0; i < run.ctx.ring->d(); ++i)
            std::cout << "A[x" << (i + 1) << "] = " << restored.x(i).pretty() << "\n";
    }
    return 0;
}

int cmd_versal(const std::string& path, const CommonOptions& opt) {
    auto t0 = Clock::now();
    NormalizeRun run = run_normalize(path, opt, NormalFormMode::versal);
    VersalOutput out = versal_pipeline(run.ctx, run.nf);
    Derivation family = normal_form_family_member(run.ctx, run.nf, out);
    BigFloat invariance = check_ideal_invariance(run.ctx, family, out);

    Json result = result_skeleton("versal", run.problem);
    result["resonance"] = resonance_to_json(run.basis);
    result["normal_form"] = normal_form_to_json(run.ctx, run.nf);
    result["versal"] = versal_to_json(out, invariance);
    Json meta = Json::object();
    meta["precision"] = run.problem.precision;
    meta["truncation"] = run.problem.truncation;
    if (opt.timings) meta["timing_ms"] = ms_since(t0);
    result["meta"] = std::move(meta);
    emit(result, opt);
    if (!opt.json_stdout) {
        std::cout << "conjugacy residual: " << bf_to_decimal(run.nf.residual, 6)
                  << "\nresubstitution residual: " << bf_to_decimal(out.resubstitution_residual, 6)
                  << "\ninvariance residual: " << bf_to_decimal(invariance, 6) << "\n";
        for (size_t j = 0; j < out.bs_generators.size(); ++j)
            std::cout << "(g,R_" << (j + 1) << ") = " << out.bs_generators[j].pretty() << "\n";
        std::cout << "nondegenerate: " << (out.nondegenerate ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_bruno(const std::string& path, const CommonOptions& opt, unsigned kmax, const std::string& phi_arg,
              double s, double s0, const std::string& a_arg, const std::string& norm_arg) {
    SigmaNorm norm = SigmaNorm::linf;
    if (norm_arg == "l1") norm = SigmaNorm::l1;
    else if (!norm_arg.empty() && norm_arg != "linf")
        throw ParseError("--sigma-norm must be 'linf' or 'l1'");
    ProblemFile p = ProblemFile::load(path);
    apply_overrides(p, opt);
    set_precision_bits(p.precision);
    auto t0 = Clock::now();
    BrunoReport rep = sigma_sequence(p.freq, kmax, norm);
    Json result = result_skeleton("bruno", p);
    result["bruno"] = bruno_report_to_json(rep);

    std::optional<bool> membership;
    if (!phi_arg.empty()) {
        std::vector<std::complex<double>> phi;
        std::stringstream ss(phi_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            double re = std::stod(item.substr(0, colon));
            double im = colon == std::string::npos ? 0.0 : std::stod(item.substr(colon + 1));
            phi.emplace_back(re, im);
        }
        std::vector<double> a;
        if (!a_arg.empty()) {
            std::stringstream sa(a_arg);
            while (std::getline(sa, item, ',')) a.push_back(std::stod(item));
        } else {
            for (unsigned k = 0; k <= kmax; ++k) a.push_back(1.0);
        }
        membership = cantor_membership(p.freq, phi, kmax, s, s0, a, norm);
        result["bruno"]["cantor_membership"] = *membership;
        result["bruno"]["s"] = s;
        result["bruno"]["s0"] = s0;
    }
    Json meta = Json::object();
    meta["precision"] = p.precision;
    meta["kmax"] = kmax;
    if (opt.timings) meta["timing_ms"] = ms_since(t0);
    result["meta"] = std::move(meta);
    emit(result, opt);
    if (!opt.json_stdout) {
        std::cout << "sigma:";
        for (double v : rep.sigma) std::cout << " " << v;
        std::cout << "\npartial sums:";
        for (double v : rep.partial_sums) std::cout << " " << v;
        std::cout << "\nverdict: " << to_string(rep.verdict) << "\n";
        if (membership) std::cout << "Z membership: " << (*membership ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& path, const CommonOptions& opt) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open result file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(std::string("result file is not valid JSON: ") + e.what());
    }
    if (doc.value("schema", std::string()) != kResultSchema)
        throw ParseError("not a resonant-forms result file");

    ProblemFile p = ProblemFile::from_json(doc.at("problem"));
    apply_overrides(p, opt);
    set_precision_bits(p.precision);
    ResonanceBasis basis = run_resonance(p);
    const Json& nfj = doc.at("normal_form");
    NormalFormMode mode =
        nfj.at("mode").get<std::string>() == "versal" ? NormalFormMode::versal : NormalFormMode::poincare_dulac;
    SolverContext ctx = SolverContext::make(p.freq, basis, p.truncation, p.mu_count, mode, variant_of(opt));
    Derivation X = p.build_field(ctx.ring);
    if (mode == NormalFormMode::versal) X = sum_deformation(X);

    NormalFormResult stored{Derivation(ctx.ring), {}, BigFloat(0), 0, {}};
    stored.normal_form = derivation_from_json(ctx.ring, nfj.at("normal_form"));
    for (const auto& g : nfj.at("generators")) stored.generators.push_back(derivation_from_json(ctx.ring, g));
    BigFloat stored_residual = bf_from_string(nfj.at("residual").get<std::string>());

    BigFloat recomputed = verify_conjugacy(ctx, X, stored);
    BigFloat allowance = stored_residual * BigFloat(2) + coeff_epsilon();
    bool ok = recomputed <= allowance;

    BigFloat resub(0), invariance(0);
    bool versal_ok = true;
    if (doc.contains("versal")) {
        const Json& vj = doc.at("versal");
        std::vector<Series> g;
        for (const auto& s : vj.at("g")) g.push_back(series_from_json(ctx.ring, s));
        std::vector<Series> exp_phi;
        for (unsigned j = 0; j < ctx.ring->d(); ++j)
            exp_phi.push_back(pushforward_function(stored.generators, Series::phi(ctx.ring, j)));
        resub = resubstitution_residual(exp_phi, g);
        BigFloat stored_resub = bf_from_string(vj.at("resubstitution_residual").get<std::string>());
        versal_ok = resub <= stored_resub * BigFloat(2) + coeff_epsilon();

        VersalOutput out = bruno_stolovitch_ideal(ctx, g);
        out.exp_phi = std::move(exp_phi);
        Derivation family = normal_form_family_member(ctx, stored, out);
        invariance = check_ideal_invariance(ctx, family, out);
        BigFloat stored_inv = bf_from_string(vj.at("invariance_residual").get<std::string>());
        versal_ok = versal_ok && invariance <= stored_inv * BigFloat(2) + coeff_epsilon();
    }

    if (!opt.json_stdout) {
        std::cout << "conjugacy residual: stored " << bf_to_decimal(stored_residual, 6) << ", recomputed "
                  << bf_to_decimal(recomputed, 6) << (ok ? " (ok)" : " (FAIL)") << "\n";
        if (doc.contains("versal"))
            std::cout << "versal residuals " << (versal_ok ? "(ok)" : "(FAIL)") << "\n";
    }
    if (!ok || !versal_ok)
        throw VerificationError("stored result failed re-verification");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal forms, versal deformations and invariant-variety ideals for vector fields with semi-simple linear part"};
    app.require_subcommand(1);

    CommonOptions opt;

    unsigned kmax = 6;
    double s = 0.1, s0 = 1.0;
    std::string phi_arg, a_arg, norm_arg;
    std::string problem_path, result_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--deg-bound", opt.deg_bound, "resonance enumeration degree bound");
        sub->add_option("--truncation", opt.truncation, "weighted truncation order N");
        sub->add_option("--precision", opt.precision, "coefficient precision in bits");
        sub->add_option("--iteration-variant", opt.variant, "'printed' or 'updated' index discipline");
        sub->add_flag("--require-positivity", opt.require_positivity, "exit 2 when P1/P2 fail");
        sub->add_option("--out", opt.out_path, "write the result JSON to this path");
        sub->add_flag("--json", opt.json_stdout, "print the result JSON on stdout");
        sub->add_flag("--timings", opt.timings, "include wall-clock timings in the result (non-deterministic)");
    };

    CLI::App* c_res = app.add_subcommand("resonance", "resonance basis and positivity verdicts");
    c_res->add_option("problem", problem_path, "problem file")->required();
    add_common(c_res);

    CLI::App* c_pos = app.add_subcommand("check-positivity", "like 'resonance', exit 2 on any failed verdict");
    c_pos->add_option("problem", problem_path, "problem file")->required();
    add_common(c_pos);

    CLI::App* c_norm = app.add_subcommand("normalize", "run the normal-form iteration");
    c_norm->add_option("problem", problem_path, "problem file")->required();
    add_common(c_norm);

    CLI::App* c_versal = app.add_subcommand("versal", "full pipeline: normal form, g series, Bruno-Stolovitch ideal");
    c_versal->add_option("problem", problem_path, "problem file")->required();
    add_common(c_versal);

    CLI::App* c_bruno = app.add_subcommand("bruno", "small-divisor diagnostics");
    c_bruno->add_option("problem", problem_path, "problem file")->required();
    c_bruno->add_option("--kmax", kmax, "sigma horizon (<= 14)");
    c_bruno->add_option("--phi", phi_arg, "detuning point, comma list of re:im");
    c_bruno->add_option("--s", s, "polydisc radius");
    c_bruno->add_option("--s0", s0, "reference radius");
    c_bruno->add_option("--a-seq", a_arg, "comma list a_0..a_n for the Cantor bounds");
    c_bruno->add_option("--sigma-norm", norm_arg, "'linf' (default) or 'l1' exponent window");
    add_common(c_bruno);

    CLI::App* c_verify = app.add_subcommand("verify", "re-verify a stored result file");
    c_verify->add_option("result", result_path, "result file")->required();
    add_common(c_verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_res->parsed()) return cmd_resonance(problem_path, opt, false);
        if (c_pos->parsed()) return cmd_resonance(problem_path, opt, true);
        if (c_norm->parsed()) return cmd_normalize(problem_path, opt);
        if (c_versal->parsed()) return cmd_versal(problem_path, opt);
        if (c_bruno->parsed()) return cmd_bruno(problem_path, opt, kmax, phi_arg, s, s0, a_arg, norm_arg);
        if (c_verify->parsed()) return cmd_verify(result_path, opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const PositivityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BlowupError& e) {
        std::cerr << "error: " << e.what();
        if (!e.exponent.empty()) {
            std::cerr << "  at K = (";
            for (size_t i = 0; i < e.exponent.size(); ++i) std::cerr << (i ? "," : "") << e.exponent[i];
            std::cerr << "), direction " << e.direction + 1 << ", |lambda| = " << e.divisor_abs;
        }
        std::cerr << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
