#include "gk/gaugecheck.hpp"

#include <random>

#include "gk/ffield.hpp"

namespace gk {

namespace {

Vec random_element(const FieldPtr& F, std::size_t n, std::mt19937_64& rng, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> C(lo, hi);
    Vec x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(Elem::of(F, Q(C(rng))));
    return x;
}

NormPtr as_split(const VFPtr& phi, NormCheck* check = nullptr) {
    if (auto sp = std::dynamic_pointer_cast<const SplitNorm>(phi)) return sp;
    NormCheck c = check_norm(*phi);
    if (check) *check = c;
    return c.verdict == Verdict::Yes ? c.norm : nullptr;
}

bool breaks_special(const SplitNorm& phi, const Algebra& A, const Involution& s, const Vec& x) {
    if (is_zero(x)) return false;
    return phi.eval(A.mul(s.apply(x), x)) != phi.eval(x) + phi.eval(x);
}

// residue vectors of one component: projective over finite fields, bounded height otherwise
template <class Visit>
bool for_residue_vectors(const FieldPtr& R, std::size_t d, int height, std::uint64_t& budget, Visit visit) {
    if (d == 0) return false;
    auto ff = FiniteField::from(R);
    std::vector<int> x(d, 0);
    if (ff) {
        // by support size, then support, then nonzero entries with the leading one fixed
        const int q = ff->q();
        for (std::size_t w = 1; w <= d; ++w) {
            std::vector<std::size_t> pos(w);
            for (std::size_t i = 0; i < w; ++i) pos[i] = i;
            for (;;) {
                std::vector<int> c(w, 1);
                for (;;) {
                    if (budget == 0) return false;
                    --budget;
                    Vec xi(d, ff->decode(0));
                    for (std::size_t i = 0; i < w; ++i) xi[pos[i]] = ff->decode(c[i]);
                    if (visit(xi)) return true;
                    std::size_t k = 1;
                    for (; k < w; ++k) {
                        if (++c[k] < q) break;
                        c[k] = 1;
                    }
                    if (k >= w) break;
                }
                std::size_t i = w;
                while (i > 0 && pos[i - 1] == d - w + i - 1) --i;
                if (i == 0) break;
                ++pos[i - 1];
                for (std::size_t j = i; j < w; ++j) pos[j] = pos[j - 1] + 1;
            }
        }
        return false;
    }
    std::fill(x.begin(), x.end(), -height);
    for (;;) {
        std::size_t f = 0;
        while (f < d && x[f] == 0) ++f;
        if (f < d && x[f] > 0) {
            if (budget == 0) return false;
            --budget;
            Vec xi;
            for (int c : x) xi.push_back(Elem::of(R, Q(c)));
            if (visit(xi)) return true;
        }
        std::size_t k = 0;
        for (; k < d; ++k) {
            if (++x[k] <= height) break;
            x[k] = -height;
        }
        if (k == d) return false;
    }
}

}  // namespace

GaugeReport check_gauge(const AlgPtr& A, const VFPtr& phi, const GaugeOptions& opt) {
    GaugeReport r;
    NormCheck nc;
    NormPtr sp = as_split(phi, &nc);
    r.is_norm = sp != nullptr;
    // random pairs only produce failure witnesses
    std::mt19937_64 rng(opt.seed);
    bool sampled_ok = phi->eval(A->one()).is_zero();
    for (int t = 0; t < opt.samples && sampled_ok; ++t) {
        Vec x = random_element(A->field(), A->dim(), rng), y = random_element(A->field(), A->dim(), rng);
        if (is_zero(x) || is_zero(y)) continue;
        if (phi->eval(A->mul(x, y)) < phi->eval(x) + phi->eval(y)) {
            sampled_ok = false;
            r.surmult_witness = std::make_pair(x, y);
        }
    }
    if (!r.is_norm) {
        r.is_surmultiplicative = sampled_ok;
        r.note = "not a norm (" + verdict_str(nc.verdict) + "): " + nc.note;
        return r;
    }
    std::optional<GradedAlgebra> G;
    try {
        G = build_graded(A, sp);
        r.is_surmultiplicative = sampled_ok;
    } catch (const SurmultiplicativityError& e) {
        r.surmult_witness = std::make_pair(e.x, e.y);
        r.note = e.what();
        return r;
    } catch (const std::invalid_argument& e) {
        r.note = e.what();
        return r;
    }
    if (!r.is_surmultiplicative) return r;
    auto ss = check_graded_semisimple(*G);
    r.is_semisimple = ss.semisimple;
    r.radical_witness = ss.graded_radical;
    if (!r.is_semisimple) return r;
    try {
        auto t = check_tame(*G);
        r.is_tame = t.tame;
        r.note = t.note;
    } catch (const UnsupportedError& e) {
        r.note = e.what();
    }
    return r;
}

InvarianceReport check_invariant(const VFPtr& phi, const Involution& s, const GaugeOptions& opt) {
    InvarianceReport r;
    if (NormPtr sp = as_split(phi)) {
        r.certified = true;
        r.witness = invariance_witness(*sp, s);
        r.invariant = !r.witness;
        return r;
    }
    std::mt19937_64 rng(opt.seed);
    const std::size_t n = phi->dim();
    for (int t = 0; t < opt.samples + int(n); ++t) {
        Vec x = t < int(n) ? unit_vec(phi->field(), n, t) : random_element(phi->field(), n, rng);
        if (!is_zero(x) && phi->eval(s.apply(x)) != phi->eval(x)) {
            r.witness = x;
            return r;
        }
    }
    r.invariant = true;
    return r;
}

std::optional<Vec> refute_special(const GradedAlgebra& G, const Involution& s, const GaugeOptions& opt,
                                  std::uint64_t* searched) {
    const Algebra& A = *G.A;
    const SplitNorm& phi = *G.phi;
    std::uint64_t count = 0;
    std::optional<Vec> hit;
    auto test = [&](const Vec& x) {
        ++count;
        if (breaks_special(phi, A, s, x)) hit = x;
        return hit.has_value();
    };
    auto done = [&]() {
        if (searched) *searched = count;
        return hit;
    };
    for (const auto& b : G.lifts)
        if (test(b) || test(s.apply(b))) return done();
    for (const auto& idx : G.components) {
        std::uint64_t budget = opt.search_budget;
        bool found = for_residue_vectors(G.residue_field(), idx.size(), opt.height, budget, [&](const Vec& r) {
            Vec xi = G.B->zero();
            for (std::size_t a = 0; a < idx.size(); ++a) xi[idx[a]] = r[a];
            return test(G.lift(xi));
        });
        if (found) return done();
    }
    std::mt19937_64 rng(opt.seed);
    for (int t = 0; t < opt.samples; ++t)
        if (test(random_element(A.field(), A.dim(), rng))) return done();
    return done();
}

SpecialReport check_special(const AlgPtr& A, const Involution& s, const NormPtr& phi, const GaugeOptions& opt) {
    SpecialReport r;
    GradedAlgebra G = build_graded(A, phi);
    auto inv = invariance_witness(*phi, s);
    r.invariant = !inv;
    r.search_witness = refute_special(G, s, opt, &r.searched);
    std::optional<Vec> constructed;
    if (r.invariant) {
        auto gs = induce_involution(G, s);
        r.graded = graded_anisotropy(G, gs, opt.aniso);
        if (r.graded.verdict == Verdict::Yes) {
            if (r.search_witness) throw std::logic_error("special certificate contradicted by " + A->str(*r.search_witness));
            r.special = Verdict::Yes;
            r.certificate = "invariant; residue involution anisotropic (" + r.graded.certificate + ")";
            return r;
        }
        if (r.graded.verdict == Verdict::No) {
            constructed = G.lift(*r.graded.witness);
            r.certificate = "residue involution isotropic";
        } else {
            r.certificate = "residue anisotropy undecided: " + r.graded.certificate;
        }
    } else {
        // y with phi(y) < phi(s(y)) has phi(s(y) y) > 2 phi(y)
        Vec b = *inv;
        constructed = phi->eval(s.apply(b)) > phi->eval(b) ? b : s.apply(b);
        r.certificate = "not invariant at " + A->str(b);
    }
    r.witness = r.search_witness ? r.search_witness : constructed;
    if (!r.witness) return r;
    if (!breaks_special(*phi, *A, s, *r.witness)) throw std::logic_error("constructed witness does not refute");
    r.special = Verdict::No;
    r.value_x = phi->eval(*r.witness);
    r.value_sxx = phi->eval(A->mul(s.apply(*r.witness), *r.witness));
    return r;
}

SpringerReport springer_criterion(const AlgPtr& A, const Involution& s, const NormPtr& phi, const GaugeOptions& opt) {
    SpringerReport r;
    GradedAlgebra G = build_graded(A, phi);
    auto gs = induce_involution(G, s);
    r.residue = residue_anisotropy(G, gs, opt.aniso);
    r.graded = graded_anisotropy(G, gs, opt.aniso);
    r.consistent = r.residue.verdict != Verdict::Undecided && r.residue.verdict == r.graded.verdict;
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < A->dim(); ++i) all.push_back(i);
    AnisotropyOptions direct = opt.aniso;
    direct.budget = opt.search_budget;
    direct.certificates = false;
    AnisotropyResult plain = anisotropy(*A, s.S, {all}, direct);
    r.sigma_search_clean = plain.verdict != Verdict::No;
    const FieldPtr& F = A->field();
    bool certifiable = opt.aniso.certificates && F->p == 0 && F->nvars() == 0 && !F->quadratic();
    if (plain.verdict == Verdict::No || !certifiable) {
        r.sigma = plain;
    } else {
        direct.certificates = true;
        r.sigma = anisotropy(*A, s.S, {all}, direct);
    }
    if (r.graded.verdict == Verdict::Yes)
        r.sigma_status = "anisotropic (certified by the residue involution)";
    else if (r.sigma.verdict == Verdict::Yes)
        r.sigma_status = "anisotropic (" + r.sigma.certificate + ")";
    else if (r.sigma.verdict == Verdict::No)
        r.sigma_status = "isotropic";
    else
        r.sigma_status = "unknown from residue";
    return r;
}

NormPtr conjugate_norm(const Algebra& A, const SplitNorm& phi, const Vec& u) {
    auto ui = A.inverse(u);
    if (!ui) throw std::invalid_argument("conjugating element is not a unit");
    std::vector<Vec> base;
    for (const auto& b : phi.base()) base.push_back(A.mul(A.mul(*ui, b), u));
    return std::make_shared<SplitNorm>(phi.valuation(), base, phi.values());
}

bool is_stable_unit(const GradedAlgebra& G, const Vec& u) {
    auto L = G.lead(u);
    return L && G.B->inverse(L->second).has_value();
}

ProbeReport mainthcor_probe(const AlgPtr& A, const Involution& s, const NormPtr& phi, const GaugeOptions& opt,
                            std::vector<Vec> units) {
    ProbeReport r;
    GradedAlgebra G = build_graded(A, phi);
    auto gs = induce_involution(G, s);
    auto res = residue_anisotropy(G, gs, opt.aniso);
    r.special = check_special(A, s, phi, opt);
    if (res.verdict == Verdict::Yes) {
        if (r.special.special != Verdict::Yes) throw std::logic_error("anisotropic residue involution without special gauge");
        r.verdict = "unique special";
    } else if (res.verdict == Verdict::No) {
        if (r.special.special != Verdict::No) throw std::logic_error("isotropic residue involution with special gauge");
        r.verdict = "no special gauge";
    } else {
        r.verdict = "undecided";
    }
    if (units.empty()) {
        const std::size_t n = A->dim();
        for (std::size_t i = 0; i < n; ++i) units.push_back(A->basis(i));
        for (std::size_t i = 1; i < n; ++i) units.push_back(A->one() + A->basis(i));
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) units.push_back(A->one() + A->basis(i) + A->basis(j));
    }
    for (const auto& u : units) {
        if (!A->inverse(u)) continue;
        NormPtr pu = conjugate_norm(*A, *phi, u);
        ++r.conjugates_checked;
        if (invariance_witness(*pu, s)) continue;
        if (check_special(A, s, pu, opt).special != Verdict::Yes) continue;
        ++r.conjugates_special;
        if (r.special.special != Verdict::Yes || !pu->same_as(*phi)) r.uniqueness_alarm = true;
    }
    return r;
}

// ---- hermitian forms ----

namespace {

DMat base_matrix(const DNorm& alpha) {
    const std::size_t n = alpha.dim();
    DMat P(n, std::vector<Vec>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) P[k][j] = alpha.base[j][k];
    return P;
}

}  // namespace

CompatReport compat_conditions(const DNorm& alpha, const HermitianForm& h) {
    CompatReport r;
    r.invariant = !invariance_witness(*end_norm(alpha), adjoint_involution(h));
    DNorm sharp = dual_norm(alpha, h);
    r.same_end = end_norm(sharp)->same_as(*end_norm(alpha));
    Value gap = alpha.values[0] - sharp.eval(alpha.base[0]);
    r.gap = gap;
    r.constant_gap = sharp.flatten()->same_as(*alpha.shifted(-gap).flatten());
    DNorm half = alpha.shifted(-gap.scaled(Q(1, 2)));
    r.shift_compatible = dual_norm(half, h).flatten()->same_as(*half.flatten());
    return r;
}

AdjointReport adjoint_residue_check(const DNorm& alpha, const HermitianForm& h) {
    AdjointReport r;
    const DivisionRing& D = alpha.D;
    const std::size_t n = alpha.dim();
    const ValPtr& v = D.w->valuation();
    if (!dual_norm(alpha, h).flatten()->same_as(*alpha.flatten())) {
        r.note = "norm not compatible with the form";
        return r;
    }
    GradedAlgebra GD = build_graded(D.D, D.w);
    auto tauD = induce_involution(GD, Involution{D.theta});
    DivisionRing BD{GD.B, tauD.S, nullptr};
    const std::size_t d = GD.dim();

    auto A = matrix_algebra(D, n);
    GradedAlgebra GE = build_graded(A, end_norm(alpha));
    auto sig = induce_involution(GE, adjoint_involution(h));

    // base rescaled to canonical degrees
    std::vector<Value> rho;
    std::vector<Elem> t;
    for (std::size_t i = 0; i < n; ++i) {
        rho.push_back(v->group().canonical(alpha.values[i]));
        t.push_back(v->section(rho[i] - alpha.values[i]));
    }
    DMat P = base_matrix(alpha);
    auto Pinv = dmat_inverse(D, P);
    auto zeroD = GD.B->zero();
    auto entry = [&](const Vec& x, const Value& target) {
        if (is_zero(x)) return zeroD;
        auto L = GD.lead(x);
        return L->first == target ? L->second : zeroD;
    };
    // residue image of each basis element of gr End(alpha) as a matrix over gr D
    std::vector<DMat> theta;
    for (std::size_t k = 0; k < GE.dim(); ++k) {
        DMat C = dmat_mul(D, dmat_mul(D, *Pinv, to_dmat(GE.lifts[k], n, D.dim())), P);
        DMat M(n, std::vector<Vec>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Vec dij = scale(C[i][j], t[j] / t[i]);
                M[i][j] = entry(dij, GE.degree[k] - rho[i] + rho[j]);
            }
        theta.push_back(M);
    }
    std::vector<Vec> flat;
    for (const auto& M : theta) flat.push_back(from_dmat(M));
    if (span_basis(flat).size() != GE.dim()) {
        r.note = "residue identification is not bijective";
        return r;
    }
    DMat H(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            DVec ei = alpha.base[i], ej = alpha.base[j];
            Vec hij = scale(h.eval(ei, ej), t[i] * t[j]);
            H[i][j] = entry(hij, rho[i] + rho[j]);
        }
    auto Hinv = dmat_inverse(BD, H);
    if (!Hinv) {
        r.note = "residue form degenerate";
        return r;
    }
    r.equal = true;
    for (std::size_t k = 0; k < GE.dim(); ++k) {
        const DMat& F = theta[k];
        DMat Fs(n, std::vector<Vec>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) Fs[i][j] = BD.bar(F[j][i]);
        DMat rhs = dmat_mul(BD, dmat_mul(BD, *Hinv, Fs), H);
        Vec lhs = zero_vec(GD.residue_field(), n * n * d);
        for (std::size_t l = 0; l < GE.dim(); ++l)
            if (!sig.S[l][k].is_zero()) lhs = lhs + scale(flat[l], sig.S[l][k]);
        ++r.checked;
        if (lhs != from_dmat(rhs)) {
            r.equal = false;
            r.note = "mismatch at basis element " + std::to_string(k);
            return r;
        }
    }
    return r;
}

// ---- composition ----

CompositionReport composed_gauge(const AlgPtr& A, const NormPtr& alpha, const CoarsenedValuation& cv) {
    CompositionReport r;
    auto semisimple = [](const GradedAlgebra& G) { return check_graded_semisimple(G).semisimple; };
    try {
        GradedAlgebra Ga = build_graded(A, alpha);
        r.gr_alpha_dim = Ga.dim();
        r.alpha_gauge = semisimple(Ga);
    } catch (const std::invalid_argument&) {
    }
    std::vector<Value> bvals;
    for (const auto& g : alpha->values()) bvals.push_back(cv.eps(g));
    NormPtr beta = std::make_shared<SplitNorm>(cv.w, alpha->base(), bvals);
    std::optional<GradedAlgebra> Gb;
    try {
        Gb = build_graded(A, beta);
        r.beta_gauge = semisimple(*Gb);
    } catch (const std::invalid_argument&) {
        return r;
    }
    // residue components of alpha on the beta-graded algebra
    const std::size_t n = A->dim();
    std::vector<Vec> base;
    std::vector<Value> mu;
    for (std::size_t i = 0; i < n; ++i) {
        if (!cv.w->group().contains(Gb->degree[i])) throw UnsupportedError("coarse degree outside the value group");
        base.push_back(unit_vec(cv.u->field(), n, i));
        mu.push_back(alpha->eval(Gb->lifts[i]) - cv.tau(Gb->degree[i]));
    }
    NormPtr star = std::make_shared<SplitNorm>(cv.u, base, mu);
    try {
        GradedAlgebra Gs = build_graded(Gb->B, star, Gb->grade);
        r.gr_star_dim = Gs.dim();
        r.star_gauge = semisimple(Gs);
    } catch (const std::invalid_argument&) {
    }
    return r;
}

}  // namespace gk
