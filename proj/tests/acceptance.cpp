// One PASS/FAIL line per acceptance criterion.  Criteria marked `known` are
// reproduced faithfully and may fail; they do not affect the exit status.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace test;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    bool known;
    std::function<Outcome()> run;
};

void require(Outcome& o, bool ok, const std::string& what)
{
    if (!ok && o.pass) o.note = what;
    o.pass = o.pass && ok;
}

RFormalMap map1(const RSeries& s)
{
    RFormalMap x(1, 1, s.truncation());
    x[0] = s;
    return x;
}

CoeffPoly xs(int k, int power = 1) { return CoeffPoly::indeterminate(Indeterminate{'x', 1, {k}}, power); }

Outcome inversion()
{
    Outcome o;
    const RFormalMap xb = invert(map1(poly(1, 3, {{{1}, Q(2)}, {{2}, Q(3)}, {{3}, Q(5)}})));
    auto c = [&](int k) { return xb[0].coefficient(Exponent(std::vector<int>{k})); };
    require(o, c(1) == Q(1, 2) && c(2) == Q(-3, 8) && c(3) == Q(1, 4), "numeric instance (2,3,5)");

    const Truncation tr(1, 3);
    PFormalMap x(1, 1, tr);
    std::vector<PSeries::Term> t;
    for (int k = 1; k <= 3; ++k) t.emplace_back(Exponent(std::vector<int>{k}), xs(k));
    x[0] = PSeries::from_terms(tr, std::move(t));
    const PFormalMap sb = invert(x);
    auto s = [&](int k) { return sb[0].coefficient(Exponent(std::vector<int>{k})); };
    require(o, s(1) == xs(1, -1), "symbolic x1 bar");
    require(o, s(2) == Rational(-1) * xs(2) * xs(1, -3), "symbolic x2 bar");
    require(o, s(3) == Rational(-1) * xs(3) * xs(1, -4) + Rational(2) * xs(2, 2) * xs(1, -5), "symbolic x3 bar");
    return o;
}

// Certified phi of criterion 2, shared with criterion 7.
std::vector<std::pair<std::string, RBiField>> certified_corpus()
{
    std::vector<std::pair<std::string, RBiField>> out;
    for (int d : {-1, 1, 2, 3, 4}) out.emplace_back("w1 d=" + std::to_string(d), w1_canonical(d, 8));
    for (int n = 2; n <= 3; ++n)
        for (const auto& d : nonnegative_corpus(n, 2)) out.emplace_back("canonical", canonical_rmatrix(d, Normalization::Raw, 8));
    for (int n = 1; n <= 3; ++n) out.emplace_back("special n=" + std::to_string(n), special_orbit_rmatrix(n, 8));
    Rng rng(20);
    for (int k = 0; k < 20; ++k) {
        const ThetaPsiPair tp = random_theta_psi(1 + k % 3, 8, rng);
        if (!detail::all_zero(theta_psi_residual(tp))) throw std::logic_error("seeded theta/psi pair has nonzero residual");
        out.emplace_back("theta-psi", rmatrix_from_theta_psi(tp));
    }
    return out;
}

Outcome cybe_certificates()
{
    Outcome o;
    std::size_t count = 0;
    for (const auto& [name, phi] : certified_corpus()) {
        const RTriField r = cybe_residual(phi);
        require(o, r.is_zero() && r.certified_degree() >= 7, name);
        ++count;
    }
    o.note = o.pass ? std::to_string(count) + " r-matrices" : o.note;
    return o;
}

Outcome negative_control()
{
    Outcome o;
    const RBiField sq = bifield1(poly(2, 8, {{{2, 0}, Q(1)}, {{0, 2}, Q(-1)}}));
    const RSeries phi3 = from_dense(3, dense_product(3, {{1, -1, 0}, {0, 1, -1}, {-1, 0, 1}}, Q(-2)));
    const RTriField r = cybe_residual(sq);
    require(o, r.at(0, 0, 0) == phi3.with_max_degree(r.at(0, 0, 0).max_degree()), "Phi");
    require(o, weak_diagonal_residual(sq) == from_dense(2, dense_product(2, {{1, -1}, {1, -1}}, Q(2))), "weak diagonal");
    RVectorField x(1, Truncation(1, 8));
    x[0] = poly(1, 8, {{{3}, Q(1)}});
    require(o, evaluate(gcybe_invariance_residual(sq, x).at(0, 0, 0), {Q(1), Q(0), Q(2)}) == -12, "GCYBE value");
    return o;
}

Outcome appendix_n1_brackets()
{
    Outcome o;
    for (int d = 1; d <= 3; ++d) {
        const PBiField om = omega_bifield(canonical_rmatrix(IntegerMatrix(std::vector<std::vector<long long>>{{d}}), Normalization::Appendix, 8),
                                          SymbolicJet::make(1, false, 12));
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j)
                require(o, bracket_coefficient(om, Indeterminate{'x', 1, {i}}, Indeterminate{'x', 1, {j}}) == appendix_n1(i, j, d),
                        "d=" + std::to_string(d) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
    }
    return o;
}

Outcome appendix_n2_rmatrix_check()
{
    Outcome o;
    for (auto [a, b, c, d] : {std::array<long, 4>{1, 0, 0, 1}, std::array<long, 4>{2, 1, 1, 1}, std::array<long, 4>{1, 2, 0, 1}}) {
        const IntegerMatrix m({{a, b}, {c, d}});
        require(o, canonical_rmatrix(m, Normalization::Appendix, 10) == appendix_n2_rmatrix(a, b, c, d, 10), "displayed phi");
    }
    for (const auto& m : nonnegative_corpus(2, 2)) {
        const Integer det = m.determinant();
        require(o, canonical_rmatrix(m, Normalization::Appendix, 10) == scale(canonical_rmatrix(m, Normalization::Raw, 10), Rational(det * det)),
                "det^2 relation");
    }
    return o;
}

Outcome appendix_n2_brackets()
{
    Outcome o;
    const auto idx = multi_indices(2, 0, 3);
    std::map<std::string, int> bad;
    int total = 0;
    for (auto [a, b, c, d] : {std::array<long, 4>{1, 0, 0, 1}, std::array<long, 4>{2, 1, 1, 1}, std::array<long, 4>{1, 2, 0, 1}}) {
        const PBiField om = omega_bifield(canonical_rmatrix(IntegerMatrix({{a, b}, {c, d}}), Normalization::Appendix, 14),
                                          SymbolicJet::make(2, true, 6));
        for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}})
            for (const auto& m : idx)
                for (const auto& n : idx) {
                    const N2Parts shown = appendix_n2(p, q, a, b, c, d, m[0], m[1], n[0], n[1]);
                    const CoeffPoly got = bracket_coefficient(om, Indeterminate{'x', p, m}, Indeterminate{'x', q, n});
                    ++total;
                    if (got != shown.two + shown.partition) ++bad["{x" + std::to_string(p) + ",x" + std::to_string(q) + "}"];
                }
    }
    o.pass = bad.empty();
    std::ostringstream s;
    s << "verbatim families mismatch on";
    for (const auto& [k, v] : bad) s << ' ' << k << ':' << v;
    s << " of " << total << " pairs";
    if (!o.pass) o.note = s.str();
    return o;
}

Outcome induced_structures()
{
    Outcome o;
    for (const auto& [name, phi] : certified_corpus())
        require(o, detail::all_zero(alpha_jacobi_residual(induced_alpha(phi))), "alpha Jacobi " + name);

    std::ostringstream consts;
    for (auto [a, b, c] : {std::array<int, 3>{1, 2, 3}, std::array<int, 3>{2, 1, 1}, std::array<int, 3>{2, 2, 2}}) {
        const RBiVector al = canonical_alpha(IntegerMatrix::diagonal({a, b, c}), Normalization::Appendix, 12);
        const auto lambda = proportionality(al.comps, appendix_n3_diagonal_alpha(a, b, c, 12).comps);
        require(o, lambda && *lambda == Q(-a * b * c), "n=3 diagonal constant");
        if (lambda) consts << " diag(" << a << ',' << b << ',' << c << "):" << *lambda;
    }

    int sym = 0, sym_ok = 0, sym_prop = 0;
    for (const auto& d : nonnegative_corpus(2, 2)) {
        if (!d.symmetric()) continue;
        ++sym;
        const RBiVector al = canonical_alpha(d, Normalization::Appendix, 12);
        const RSeries shown = appendix_n2_alpha(d.at(0, 0), d.at(0, 1), d.at(1, 0), d.at(1, 1), 12);
        if (al.at(0, 1) == shown) ++sym_ok;
        if (proportionality(std::vector<RSeries>{al.at(0, 1)}, std::vector<RSeries>{shown})) ++sym_prop;
    }
    require(o, sym_ok == sym,
            "n=2 symmetric exact match " + std::to_string(sym_ok) + "/" + std::to_string(sym) + ", up to a constant " +
                std::to_string(sym_prop) + "/" + std::to_string(sym));
    if (o.pass) o.note = "constants" + consts.str();
    else o.note += "; n=3 constants" + consts.str();
    return o;
}

Outcome multiplicativity()
{
    Outcome o;
    Rng rng(8);
    const std::vector<IntegerMatrix> ds = {IntegerMatrix::identity(2), IntegerMatrix({{1, 1}, {0, 1}}), IntegerMatrix({{2, 1}, {1, 1}})};
    for (int k = 0; k < 25; ++k) {
        const RBiField phi = canonical_rmatrix(ds[static_cast<std::size_t>(k % 3)], Normalization::Raw, 5);
        require(o, multiplicativity_residual(phi, random_group_element(2, 5, rng), random_group_element(2, 5, rng)).is_zero(),
                "pair " + std::to_string(k));
    }
    return o;
}

Outcome jet_space()
{
    Outcome o;
    Rng rng(9);
    const RBiField p1 = w1_canonical(1, 5), p1b = w1_canonical(2, 5);
    const RBiField p2 = canonical_rmatrix(IntegerMatrix({{1, 1}, {0, 1}}), Normalization::Raw, 5);
    for (int k = 0; k < 10; ++k) {
        const bool wide = k % 2 == 1;
        RFormalMap f(1, wide ? 2 : 1, Truncation(1, 5));
        for (auto& c : f.comps) c = random_series(Truncation(1, 5), rng, SampleShape{1, 3, 3, 0.7});
        const RFormalMap x = random_group_element(1, 5, rng);
        const RFormalMap y = random_group_element(wide ? 2 : 1, 5, rng);
        require(o, jet_action_residual(p1, wide ? p2 : p1b, x, y, f).is_zero(), "triple " + std::to_string(k));
    }
    std::vector<RBiField> one = {w1_canonical(-1, 6), w1_canonical(1, 6), w1_canonical(2, 6)};
    std::vector<RBiField> two = {canonical_rmatrix(IntegerMatrix::identity(2), Normalization::Raw, 6), special_orbit_rmatrix(2, 6)};
    for (const auto& pm : one) {
        RFormalMap f1(1, 1, Truncation(1, 6)), f2(1, 2, Truncation(1, 6));
        for (auto& c : f1.comps) c = random_series(Truncation(1, 6), rng, SampleShape{1, 3, 3, 0.7});
        for (auto& c : f2.comps) c = random_series(Truncation(1, 6), rng, SampleShape{1, 3, 3, 0.7});
        for (const auto& pn : one) require(o, pi_jacobi_certificate(pm, pn, f1).certified, "certificate 1->1");
        for (const auto& pn : two) require(o, pi_jacobi_certificate(pm, pn, f2).certified, "certificate 1->2");
    }
    return o;
}

Outcome cocycle()
{
    Outcome o;
    Rng rng(10);
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 2, N = 3 + k % 3;
        const SampleShape shape{0, N - 1, 3, 0.5};
        const RBiField phi = random_skew_bifield(n, N, rng, shape);
        const RVectorField x = random_vector_field(n, N, rng, shape);
        const RVectorField y = random_vector_field(n, N, rng, shape);
        require(o, cocycle_residual(phi, x, y).is_zero(), "triple " + std::to_string(k));
    }
    return o;
}

Outcome orbit_closure()
{
    Outcome o;
    Rng rng(11);
    const std::vector<IntegerMatrix> ds = {IntegerMatrix::identity(2), IntegerMatrix({{1, 2}, {0, 1}}), IntegerMatrix({{2, 1}, {1, 1}})};
    for (int k = 0; k < 10; ++k) {
        const RBiField phi = canonical_rmatrix(ds[static_cast<std::size_t>(k % 3)], Normalization::Raw, 6);
        const RFormalMap x = random_group_element(2, 6, rng), y = random_group_element(2, 6, rng);
        const RBiField moved = pushforward_bifield(x, phi);
        require(o, cybe_residual(moved).is_zero(), "closure " + std::to_string(k));
        require(o, pushforward_bifield(y, moved) == pushforward_bifield(compose(y, x), phi), "composition " + std::to_string(k));
    }
    return o;
}

Outcome moduli()
{
    Outcome o;
    for (int d : {-1, 1, 2, 3, 4}) {
        const RSeries f = poly(1, 10, {{{-d}, Q(-1)}}, {std::min(0, -d)});
        require(o, w1_general(f) == w1_canonical(d, 10), "d=" + std::to_string(d));
    }
    require(o, w1_canonical(0, 10).is_zero(), "d=0");
    return o;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "inversion golden values", 1, false, inversion},
        {2, "CYBE certificates", 120, false, cybe_certificates},
        {3, "negative control u^2 - v^2", 0, false, negative_control},
        {4, "n=1 appendix brackets", 30, false, appendix_n1_brackets},
        {5, "n=2 appendix r-matrix", 0, false, appendix_n2_rmatrix_check},
        {6, "n=2 appendix brackets (verbatim)", 0, true, appendix_n2_brackets},
        {7, "induced structures", 0, true, induced_structures},
        {8, "multiplicativity", 60, false, multiplicativity},
        {9, "jet space", 0, false, jet_space},
        {10, "coboundary cocycle identity", 0, false, cocycle},
        {11, "orbit action closure", 0, false, orbit_closure},
        {12, "moduli sanity", 0, false, moduli},
    };
    int hard_failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = Outcome{false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_seconds > 0 && secs > c.budget_seconds) {
            o.pass = false;
            o.note = "over time budget";
        }
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << " AC" << c.id << ' ' << c.title;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << " (" << secs << " s)";
        if (!o.note.empty()) line << ": " << o.note;
        if (!o.pass && c.known) line << " [known discrepancy]";
        std::cout << line.str() << std::endl;
        if (!o.pass && !c.known) ++hard_failures;
    }
    return hard_failures == 0 ? 0 : 1;
}
