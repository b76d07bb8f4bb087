#include "resonant/problem.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace resonant {

const char* const kResultSchema = "resonant-forms/result-v1";
const char* const kVersionString = "resonant-forms 0.1.0";

namespace {

Rational rational_from_json(const Json& v) {
    if (v.is_array()) {
        if (v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
            throw ParseError("rational must be [numerator, denominator]");
        long long den = v[1].get<long long>();
        if (den == 0) throw ParseError("rational denominator is zero");
        return Rational(v[0].get<long long>(), den);
    }
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw ParseError("expected an exact rational (integer or [num, den])");
}

BigFloat real_from_json(const Json& v) {
    if (v.is_string()) return bf_from_string(v.get<std::string>());
    if (v.is_number_integer()) return BigFloat(v.get<long long>());
    if (v.is_number_float()) return BigFloat(v.get<double>());
    throw ParseError("expected a numeric literal (number or string)");
}

Cplx coefficient_from_json(const Json& v) {
    if (v.is_object()) {
        Cplx c;
        if (v.contains("re")) c.re = real_from_json(v.at("re"));
        if (v.contains("im")) c.im = real_from_json(v.at("im"));
        return c;
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
        // exact rational
        return Cplx(BigFloat(v[0].get<long long>()) / BigFloat(v[1].get<long long>()));
    }
    if (v.is_array() && v.size() == 2) {
        return Cplx(real_from_json(v[0]), real_from_json(v[1]));
    }
    return Cplx(real_from_json(v));
}

std::vector<unsigned> uvec_from_json(const Json& v, size_t expected, const char* what) {
    if (!v.is_array()) throw ParseError(std::string(what) + " must be an array");
    if (expected != 0 && v.size() != expected) throw ParseError(std::string(what) + " has the wrong length");
    std::vector<unsigned> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number_integer() || e.get<long long>() < 0)
            throw ParseError(std::string(what) + " entries must be non-negative integers");
        out.push_back(e.get<unsigned>());
    }
    return out;
}

Json cplx_to_json(const Cplx& c) {
    Json j = Json::object();
    j["re"] = bf_to_hex(c.re);
    j["im"] = bf_to_hex(c.im);
    j["approx"] = bf_to_decimal(c.re, 16) + (c.im.is_zero() ? "" : (" + " + bf_to_decimal(c.im, 16) + "i"));
    return j;
}

}  // namespace

ProblemFile ProblemFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(std::string("problem file is not valid JSON: ") + e.what());
    }
    return from_json(doc);
}

ProblemFile ProblemFile::from_json(const Json& doc) {
    ProblemFile p;
    p.raw = doc;
    if (!doc.is_object()) throw ParseError("problem document must be a JSON object");
    p.dim = doc.at("dim").get<unsigned>();
    if (p.dim == 0 || p.dim > 8) throw ParseError("dim must be in 1..8");
    p.mu_count = doc.value("mu_count", 0u);
    p.truncation = doc.value("truncation", 8u);
    p.precision = doc.value("precision", 0u);  // 0: defer to flag/env/default
    p.deg_bound = doc.value("deg_bound", kDefaultDegBound);
    std::string mode = doc.value("mode", std::string("versal"));
    if (mode == "versal") p.mode = NormalFormMode::versal;
    else if (mode == "poincare_dulac") p.mode = NormalFormMode::poincare_dulac;
    else throw ParseError("mode must be 'versal' or 'poincare_dulac'");

    const Json& tb = doc.at("trans_basis");
    unsigned m = tb.at("size").get<unsigned>();
    const Json& om = tb.at("omega");
    if (!om.is_array() || om.size() != m) throw ParseError("trans_basis.omega must list one value per basis element");
    std::vector<Cplx> omega;
    omega.reserve(m);
    for (const auto& v : om) omega.push_back(coefficient_from_json(v));

    const Json& le = doc.at("lambda_exact");
    if (!le.is_array() || le.size() != p.dim) throw ParseError("lambda_exact needs one row per dimension");
    std::vector<std::vector<Rational>> rows;
    rows.reserve(p.dim);
    for (const auto& row : le) {
        if (!row.is_array() || row.size() != m) throw ParseError("lambda_exact rows need one rational per omega");
        std::vector<Rational> r;
        r.reserve(m);
        for (const auto& q : row) r.push_back(rational_from_json(q));
        rows.push_back(std::move(r));
    }

    std::optional<std::vector<std::complex<double>>> shadow;
    if (doc.contains("lambda_numeric")) {
        const Json& ln = doc.at("lambda_numeric");
        if (!ln.is_array() || ln.size() != p.dim) throw ParseError("lambda_numeric needs one entry per dimension");
        std::vector<std::complex<double>> sh;
        for (const auto& v : ln) {
            if (v.is_array() && v.size() == 2)
                sh.emplace_back(v[0].get<double>(), v[1].get<double>());
            else
                sh.emplace_back(v.get<double>(), 0.0);
        }
        shadow = std::move(sh);
    }
    p.freq = FrequencyVector::make(std::move(rows), std::move(omega), std::move(shadow));

    const Json& terms = doc.at("field_terms");
    if (!terms.is_array()) throw ParseError("field_terms must be an array");
    for (const auto& t : terms) {
        FieldTerm ft;
        unsigned target = t.at("target").get<unsigned>();
        if (target < 1 || target > p.dim) throw ParseError("field term target must be in 1..dim");
        ft.target = target - 1;
        ft.exponent = uvec_from_json(t.at("exponent"), p.dim, "field term exponent");
        if (t.contains("mu_exponent"))
            ft.mu_exponent = uvec_from_json(t.at("mu_exponent"), p.mu_count, "field term mu exponent");
        else
            ft.mu_exponent.assign(p.mu_count, 0);
        ft.coefficient = coefficient_from_json(t.at("coefficient"));
        p.field_terms.push_back(std::move(ft));
    }
    return p;
}

Derivation ProblemFile::build_field(const RingPtr& ring) const {
    if (ring->d() != dim || ring->l() != mu_count) throw PreconditionError("ring does not match the problem");
    Derivation X(ring);
    for (const auto& t : field_terms) {
        Mono m = make_mono(*ring, t.exponent, {}, {}, t.mu_exponent);
        if (m.wt >= ring->trunc())
            continue;  // beyond the truncation order; harmless to drop on input
        X.x(t.target).add_term(m, t.coefficient);
    }
    // the degree-1 part must be the diagonal implied by lambda
    for (unsigned i = 0; i < dim; ++i) {
        for (unsigned j = 0; j < dim; ++j) {
            Mono xj;
            xj.e[ring->x_slot(j)] = 1;
            xj.wt = 1;
            Cplx c = X.x(i).coeff(xj);
            Cplx want = (i == j) ? freq.lambda[i] : Cplx::zero();
            Cplx diff = c - want;
            BigFloat scale = want.sup_abs() + BigFloat(1);
            if (diff.sup_abs() > scale * BigFloat(1e-20))
                throw ParseError("degree-1 field terms must form the diagonal linear part matching lambda");
        }
    }
    return X;
}

Json series_to_json(const Series& s) {
    const Ring& ring = s.ring();
    Json terms = Json::array();
    for (const auto& [m, c] : s.terms()) {
        Json t = Json::object();
        Json x = Json::array(), u = Json::array(), phi = Json::array(), mu = Json::array();
        for (unsigned i = 0; i < ring.d(); ++i) x.push_back(m.e[ring.x_slot(i)]);
        for (unsigned j = 0; j < ring.p(); ++j) u.push_back(m.e[ring.u_slot(j)]);
        for (unsigned i = 0; i < ring.d(); ++i) phi.push_back(m.e[ring.phi_slot(i)]);
        for (unsigned k = 0; k < ring.l(); ++k) mu.push_back(m.e[ring.mu_slot(k)]);
        t["x"] = std::move(x);
        t["u"] = std::move(u);
        t["phi"] = std::move(phi);
        t["mu"] = std::move(mu);
        t["re"] = bf_to_hex(c.re);
        t["im"] = bf_to_hex(c.im);
        terms.push_back(std::move(t));
    }
    Json out = Json::object();
    out["terms"] = std::move(terms);
    out["pretty"] = s.pretty();
    return out;
}

Series series_from_json(const RingPtr& ring, const Json& doc) {
    Series s(ring);
    for (const auto& t : doc.at("terms")) {
        auto x = uvec_from_json(t.at("x"), ring->d(), "term x exponent");
        auto u = uvec_from_json(t.at("u"), ring->p(), "term u exponent");
        auto phi = uvec_from_json(t.at("phi"), ring->d(), "term phi exponent");
        auto mu = uvec_from_json(t.at("mu"), ring->l(), "term mu exponent");
        Mono m = make_mono(*ring, x, u, phi, mu);
        Cplx c(bf_from_string(t.at("re").get<std::string>()), bf_from_string(t.at("im").get<std::string>()));
        s.add_term(m, c);
    }
    return s;
}

Json derivation_to_json(const Derivation& d) {
    Json out = Json::object();
    Json xs = Json::array(), phis = Json::array();
    for (unsigned i = 0; i < d.ring().d(); ++i) xs.push_back(series_to_json(d.x(i)));
    for (unsigned i = 0; i < d.ring().d(); ++i) phis.push_back(series_to_json(d.phi(i)));
    out["x_components"] = std::move(xs);
    out["phi_components"] = std::move(phis);
    return out;
}

Derivation derivation_from_json(const RingPtr& ring, const Json& doc) {
    Derivation d(ring);
    const Json& xs = doc.at("x_components");
    const Json& phis = doc.at("phi_components");
    if (xs.size() != ring->d() || phis.size() != ring->d())
        throw ParseError("derivation component count mismatch");
    for (unsigned i = 0; i < ring->d(); ++i) {
        d.x(i) = series_from_json(ring, xs[i]);
        d.phi(i) = series_from_json(ring, phis[i]);
    }
    return d;
}

Json resonance_to_json(const ResonanceBasis& basis) {
    Json out = Json::object();
    Json gens = Json::array();
    for (const auto& g : basis.generators) gens.push_back(g);
    out["generators"] = std::move(gens);
    out["deg_bound"] = basis.deg_bound;
    out["complete"] = basis.complete;
    Json rays = Json::array();
    for (const auto& r : basis.extreme_rays) rays.push_back(r);
    out["extreme_rays"] = std::move(rays);
    out["p1"] = to_string(basis.p1);
    out["p2"] = to_string(basis.p2);
    if (basis.p1_witness) {
        Json w = Json::object();
        w["exponent"] = basis.p1_witness->j;
        w["combo_a"] = basis.p1_witness->combo_a;
        w["combo_b"] = basis.p1_witness->combo_b;
        out["p1_witness"] = std::move(w);
    }
    if (basis.p2_witness) {
        Json w = Json::object();
        w["exponent"] = basis.p2_witness->k;
        w["direction"] = basis.p2_witness->direction + 1;
        w["representable"] = basis.p2_witness->representable;
        if (!basis.p2_witness->combo_a.empty()) {
            w["combo_a"] = basis.p2_witness->combo_a;
            w["combo_b"] = basis.p2_witness->combo_b;
        }
        out["p2_witness"] = std::move(w);
    }
    return out;
}

Json normal_form_to_json(const SolverContext& ctx, const NormalFormResult& result) {
    Json out = Json::object();
    out["mode"] = to_string(ctx.mode);
    out["variant"] = to_string(ctx.variant);
    out["normal_form"] = derivation_to_json(result.normal_form);
    {
        // presentation with the resonant monomials rewritten over the u tags
        Derivation restored = restore_u_tags(ctx, result.normal_form);
        Json pretty = Json::array();
        for (unsigned i = 0; i < ctx.ring->d(); ++i) pretty.push_back(restored.x(i).pretty());
        out["normal_form_u_pretty"] = std::move(pretty);
    }
    Json gens = Json::array();
    for (const auto& g : result.generators) gens.push_back(derivation_to_json(g));
    out["generators"] = std::move(gens);
    out["generator_orders"] = result.generator_orders;
    out["residual"] = bf_to_hex(result.residual);
    out["residual_approx"] = bf_to_decimal(result.residual, 6);
    out["steps"] = result.steps;
    return out;
}

Json versal_to_json(const VersalOutput& out, const BigFloat& invariance_residual) {
    Json j = Json::object();
    Json exp_phi = Json::array(), g = Json::array(), bs = Json::array(), graph = Json::array();
    for (const auto& s : out.exp_phi) exp_phi.push_back(series_to_json(s));
    for (const auto& s : out.g) g.push_back(series_to_json(s));
    for (const auto& s : out.bs_generators) bs.push_back(series_to_json(s));
    for (const auto& s : out.graph_generators) graph.push_back(series_to_json(s));
    j["exp_phi"] = std::move(exp_phi);
    j["g"] = std::move(g);
    j["bs_generators"] = std::move(bs);
    j["graph_generators"] = std::move(graph);
    Json cls = Json::array();
    for (const auto& rep : out.classification) {
        Json r = Json::object();
        Json uc = Json::array(), mc = Json::array();
        for (const auto& c : rep.u_coeff) uc.push_back(cplx_to_json(c));
        for (const auto& c : rep.mu_coeff) mc.push_back(cplx_to_json(c));
        r["u_linear"] = std::move(uc);
        r["mu_linear"] = std::move(mc);
        cls.push_back(std::move(r));
    }
    j["classification"] = std::move(cls);
    j["nondegenerate"] = out.nondegenerate;
    j["resubstitution_residual"] = bf_to_hex(out.resubstitution_residual);
    j["resubstitution_residual_approx"] = bf_to_decimal(out.resubstitution_residual, 6);
    j["invariance_residual"] = bf_to_hex(invariance_residual);
    j["invariance_residual_approx"] = bf_to_decimal(invariance_residual, 6);
    return j;
}

Json bruno_report_to_json(const BrunoReport& rep) {
    Json j = Json::object();
    j["kmax"] = rep.kmax;
    j["sigma"] = rep.sigma;
    j["partial_sums"] = rep.partial_sums;
    j["verdict"] = to_string(rep.verdict);
    return j;
}

std::string dump_result(const Json& result) { return result.dump(2) + "\n"; }

void write_result(const Json& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << dump_result(result);
}

}  // namespace resonant
