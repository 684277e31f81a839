#include "progcover/progressions.hpp"

#include "progcover/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <limits>

namespace progcover {

RootDescriptor common_field(const RootDescriptor& a, const RootDescriptor& b) {
    if (a.same_field(b) || b.m() == 1) return a;
    if (a.m() == 1) return b;
    throw usage_error("operands live in different fields");
}

// ---------------------------------------------------------------- types

ArithmeticProgression::ArithmeticProgression(FieldElement v, FieldElement d)
    : v_(lift(v, common_field(v.descriptor(), d.descriptor()))),
      d_(lift(d, common_field(v.descriptor(), d.descriptor()))) {
    if (sign(v_) < 0) {
        throw domain_error("arithmetic progression needs v >= 0, got " + to_string(v_));
    }
    if (sign(d_) <= 0) {
        throw domain_error("arithmetic progression needs d > 0, got " + to_string(d_));
    }
}

FieldElement ArithmeticProgression::term(const Integer& h) const { return v_ + d_ * Rational(h); }

GeometricProgression::GeometricProgression(FieldElement u, FieldElement ratio)
    : u_(lift(u, common_field(u.descriptor(), ratio.descriptor()))),
      ratio_(lift(ratio, common_field(u.descriptor(), ratio.descriptor()))) {
    if (sign(u_) <= 0) {
        throw domain_error("geometric progression needs u > 0, got " + to_string(u_));
    }
    if (compare(ratio_, FieldElement::from_rational(ratio_.descriptor(), 1)) <= 0) {
        throw domain_error("geometric progression needs ratio > 1, got " + to_string(ratio_));
    }
}

FieldElement GeometricProgression::term(unsigned long k) const {
    return u_ * ratio_.pow(static_cast<long>(k));
}

// ---------------------------------------------------------------- membership

namespace {

std::optional<Integer> index_from_quotient(const FieldElement& quotient) {
    const auto h = quotient.as_rational();
    if (!h || !is_integer(*h) || sgn(*h) < 0) return std::nullopt;
    return h->get_num();
}

// (x - v) * inv_d, all operands already in one field
std::optional<Integer> ap_index_prepared(const FieldElement& v, const FieldElement& inv_d, const FieldElement& x) {
    return index_from_quotient((x - v) * inv_d);
}

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(value_, prec); }
    ~Mpfr() { mpfr_clear(value_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return value_; }

private:
    mpfr_t value_;
};

// log of a positive rational, rounded in the given direction
void log_rounded(Mpfr& out, const Rational& x, mpfr_rnd_t rnd) {
    mpfr_set_q(out.get(), x.get_mpq_t(), rnd);
    mpfr_log(out.get(), out.get(), rnd);
}

struct ExponentWindow {
    bool empty = false;
    unsigned long lo = 0;
    unsigned long hi = 0;
};

// Bracket k in u * ratio^k = x from interval logs. Nullopt when the enclosure
// is too coarse to bracket at this precision.
std::optional<ExponentWindow> bracket_exponent(const FieldElement& u, const FieldElement& ratio,
                                               const FieldElement& x, unsigned bits) {
    const RationalInterval ex = enclose(x, bits);
    const RationalInterval eu = enclose(u, bits);
    const RationalInterval er = enclose(ratio, bits);
    if (ex.lo <= 0 || eu.lo <= 0 || er.lo <= 1) return std::nullopt;

    const auto prec = static_cast<mpfr_prec_t>(bits + 64);
    Mpfr lx_lo(prec), lx_hi(prec), lu_lo(prec), lu_hi(prec), lr_lo(prec), lr_hi(prec);
    log_rounded(lx_lo, ex.lo, MPFR_RNDD);
    log_rounded(lx_hi, ex.hi, MPFR_RNDU);
    log_rounded(lu_lo, eu.lo, MPFR_RNDD);
    log_rounded(lu_hi, eu.hi, MPFR_RNDU);
    log_rounded(lr_lo, er.lo, MPFR_RNDD);
    log_rounded(lr_hi, er.hi, MPFR_RNDU);
    if (mpfr_sgn(lr_lo.get()) <= 0) return std::nullopt;

    Mpfr num_lo(prec), num_hi(prec), k_lo(prec), k_hi(prec);
    mpfr_sub(num_lo.get(), lx_lo.get(), lu_hi.get(), MPFR_RNDD);
    mpfr_sub(num_hi.get(), lx_hi.get(), lu_lo.get(), MPFR_RNDU);
    // [num_lo, num_hi] / [lr_lo, lr_hi] with a positive denominator
    mpfr_div(k_lo.get(), num_lo.get(), mpfr_sgn(num_lo.get()) >= 0 ? lr_hi.get() : lr_lo.get(), MPFR_RNDD);
    mpfr_div(k_hi.get(), num_hi.get(), mpfr_sgn(num_hi.get()) >= 0 ? lr_lo.get() : lr_hi.get(), MPFR_RNDU);

    ExponentWindow w;
    if (mpfr_sgn(k_hi.get()) < 0) {
        w.empty = true;
        return w;
    }
    mpfr_floor(k_hi.get(), k_hi.get());
    if (mpfr_cmp_ui(k_hi.get(), std::numeric_limits<long>::max() / 2) > 0) {
        throw cost_guard_error("gp_index_of: exponent exceeds supported range");
    }
    w.hi = mpfr_get_ui(k_hi.get(), MPFR_RNDD);
    if (mpfr_sgn(k_lo.get()) > 0) {
        mpfr_ceil(k_lo.get(), k_lo.get());
        w.lo = mpfr_get_ui(k_lo.get(), MPFR_RNDU);
    }
    w.empty = w.lo > w.hi;
    return w;
}

} // namespace

std::optional<Integer> ap_index_of(const ArithmeticProgression& ap, const FieldElement& x) {
    const RootDescriptor field = common_field(ap.descriptor(), x.descriptor());
    const FieldElement v = lift(ap.start(), field);
    const FieldElement d = lift(ap.step(), field);
    return ap_index_prepared(v, d.inverse(), lift(x, field));
}

std::optional<unsigned long> gp_index_of(const GeometricProgression& gp, const FieldElement& x) {
    const RootDescriptor field = common_field(gp.descriptor(), x.descriptor());
    const FieldElement value = lift(x, field);
    if (sign(value) <= 0) return std::nullopt;
    const FieldElement u = lift(gp.start(), field);
    const FieldElement ratio = lift(gp.ratio(), field);

    std::optional<ExponentWindow> window;
    for (unsigned bits = 64; bits <= (1u << 14); bits *= 2) {
        window = bracket_exponent(u, ratio, value, bits);
        if (window && (window->empty || window->hi - window->lo <= 2)) break;
    }
    if (!window) {
        throw invariant_violation("gp_index_of: could not bracket exponent");
    }
    if (window->empty) return std::nullopt;
    FieldElement term = u * ratio.pow(static_cast<long>(window->lo));
    for (unsigned long k = window->lo; k <= window->hi; ++k) {
        if (term == value) return k;
        term *= ratio;
    }
    return std::nullopt;
}

std::vector<IntersectionPoint> intersect_prefix(const ArithmeticProgression& ap,
                                                const GeometricProgression& gp, unsigned long count) {
    const RootDescriptor field = common_field(ap.descriptor(), gp.descriptor());
    const FieldElement v = lift(ap.start(), field);
    const FieldElement inv_d = lift(ap.step(), field).inverse();
    const FieldElement ratio = lift(gp.ratio(), field);
    FieldElement term = lift(gp.start(), field);

    std::vector<IntersectionPoint> points;
    for (unsigned long k = 0; k < count; ++k) {
        if (auto h = ap_index_prepared(v, inv_d, term)) {
            points.push_back({k, std::move(*h), term});
        }
        if (k + 1 < count) term *= ratio;
    }
    return points;
}

// ---------------------------------------------------------------- structure

namespace {

// r of the ratio's root form: the descriptor's r when the ratio is the
// generator q, or the ratio itself when the field is Q.
Rational generator_radicand(const GeometricProgression& gp, const char* who) {
    const RootDescriptor& d = gp.descriptor();
    if (d.m() == 1) {
        return *gp.ratio().as_rational();
    }
    if (!(gp.ratio() == FieldElement::generator(d))) {
        throw usage_error(std::string(who) + ": ratio must be the field generator q = r^(1/m)");
    }
    return d.r();
}

} // namespace

Lemma1Report lemma1_analyze(const ArithmeticProgression& ap, const GeometricProgression& gp,
                            unsigned long count) {
    const Rational r = generator_radicand(gp, "lemma1_analyze");
    const RootDescriptor field = common_field(ap.descriptor(), gp.descriptor());
    const unsigned m = field.m();

    Lemma1Report report;
    report.points = intersect_prefix(ap, gp, count);
    if (report.points.size() < 3) {
        report.status = Lemma1Status::inconclusive;
        return report;
    }
    report.status = Lemma1Status::ok;

    const FieldElement d = lift(ap.step(), field);
    const FieldElement t = lift(ap.start(), field) / d;
    report.t = t.as_rational();
    if (!report.t) {
        throw invariant_violation("lemma1_analyze: >= 3 common terms but v/d = " + to_string(t) +
                                  " is irrational");
    }
    const FieldElement xi = lift(gp.start(), field) / d;
    const auto index = xi.monomial_index();
    if (!index) {
        throw invariant_violation("lemma1_analyze: >= 3 common terms but u/d = " + to_string(xi) +
                                  " is not of the form s q^(-l)");
    }
    // c q^i = (c r) q^(i - m) for i > 0
    const Rational& c = xi.coords()[*index];
    report.ell = *index == 0 ? 0u : m - *index;
    report.s = *index == 0 ? c : Rational(c * r);
    report.residues_ok = std::all_of(report.points.begin(), report.points.end(),
                                     [&](const IntersectionPoint& p) { return p.k % m == *report.ell; });
    return report;
}

Theorem2Cover theorem2_cover(const GeometricProgression& gp, unsigned long n) {
    if (n == 0) {
        throw usage_error("theorem2_cover: n must be positive");
    }
    const Rational r = generator_radicand(gp, "theorem2_cover");
    const RootDescriptor& field = gp.descriptor();
    const unsigned m = field.m();
    const Integer r1 = r.get_num();
    const Integer r2 = r.get_den();

    Theorem2Cover out;
    const Rational scale(Integer(1), pow(r2, n));
    FieldElement q_power = FieldElement::from_rational(field, 1);
    const FieldElement q = FieldElement::generator(field);
    for (unsigned i = 0; i < m; ++i) {
        out.progressions.emplace_back(FieldElement::zero(field), gp.start() * q_power * scale);
        q_power *= q;
    }

    FieldElement term = gp.start();
    for (unsigned long k = 0; k < n; ++k) {
        const unsigned residue = static_cast<unsigned>(k % m);
        const unsigned long block = k / m;
        const Integer h = pow(r1, block) * pow(r2, n - block);
        const ArithmeticProgression& ap = out.progressions[residue];
        if (!(ap.term(h) == term) || ap_index_of(ap, term) != std::optional<Integer>(h)) {
            throw invariant_violation("theorem2_cover: term k = " + std::to_string(k) +
                                      " is not at the closed-form index");
        }
        out.terms.push_back({k, residue, h});
        term *= gp.ratio();
    }
    return out;
}

IntersectionBoundCheck assert_dj_bound(const ArithmeticProgression& ap, const GeometricProgression& gp,
                                       unsigned long count) {
    if (const auto j = rational_power_order(gp.ratio())) {
        throw precondition_error("intersection bound needs a ratio that is not a root of a rational; ratio^" +
                                     std::to_string(*j) + " is rational",
                                 static_cast<long>(*j));
    }
    const std::size_t hits = intersect_prefix(ap, gp, count).size();
    return {hits, hits <= kIntersectionBound};
}

} // namespace progcover
