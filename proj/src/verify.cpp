#include "fdiff/verify.hpp"

#include <sstream>

#include "fdiff/homspace.hpp"
#include "fdiff/sampling.hpp"

namespace fdiff {

namespace {

template <class F>
int min_cert(const std::vector<F>& v)
{
    int c = std::numeric_limits<int>::max();
    for (const auto& s : v) c = std::min(c, s.certified_degree());
    return c;
}

struct Suite {
    std::string name;
    std::vector<CheckResult>* out;

    void add(const std::string& check, bool pass, std::optional<int> cert, const std::string& detail = "")
    {
        out->push_back(CheckResult{name, check, pass, cert, detail});
    }

    // Runs body; module errors become a failing check carrying the message.
    template <class Body>
    void run(const std::string& check, Body body)
    {
        try {
            body();
        } catch (const Error& e) {
            add(check, false, std::nullopt, std::string("error: ") + e.what());
        }
    }
};

RSeries var(const Truncation& tr, int k) { return RSeries::variable(tr, k); }

CoeffPoly x1(int i)
{
    if (i <= 0) return CoeffPoly();
    return CoeffPoly::indeterminate(Indeterminate{'x', 1, {i}});
}

// Sum over compositions of `total` into `parts` positive parts of x_{s_1}...x_{s_parts}.
CoeffPoly compositions(int total, int parts)
{
    std::vector<CoeffPoly> row(static_cast<std::size_t>(total + 1));
    row[0] = CoeffPoly(1);
    for (int p = 0; p < parts; ++p) {
        std::vector<CoeffPoly> next(static_cast<std::size_t>(total + 1));
        for (int s = 0; s <= total; ++s) {
            if (row[static_cast<std::size_t>(s)].is_zero()) continue;
            for (int k = 1; s + k <= total; ++k) next[static_cast<std::size_t>(s + k)] += row[static_cast<std::size_t>(s)] * x1(k);
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(total)];
}

CoeffPoly x2(int comp, int i1, int i2)
{
    if (i1 < 0 || i2 < 0) return CoeffPoly();
    return CoeffPoly::indeterminate(Indeterminate{'x', comp, {i1, i2}});
}

// [u^m] (X^1)^p (X^2)^q for generic jets including constant terms.
CoeffPoly product_coefficient(int p, int q, int m1, int m2)
{
    using Grid = std::vector<std::vector<CoeffPoly>>;
    Grid acc(static_cast<std::size_t>(m1 + 1), std::vector<CoeffPoly>(static_cast<std::size_t>(m2 + 1)));
    acc[0][0] = CoeffPoly(1);
    auto times = [&](int comp) {
        Grid next(static_cast<std::size_t>(m1 + 1), std::vector<CoeffPoly>(static_cast<std::size_t>(m2 + 1)));
        for (int a = 0; a <= m1; ++a)
            for (int b = 0; b <= m2; ++b) {
                const auto& c = acc[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                if (c.is_zero()) continue;
                for (int s = 0; a + s <= m1; ++s)
                    for (int t = 0; b + t <= m2; ++t)
                        next[static_cast<std::size_t>(a + s)][static_cast<std::size_t>(b + t)] += c * x2(comp, s, t);
            }
        acc = std::move(next);
    };
    for (int k = 0; k < p; ++k) times(1);
    for (int k = 0; k < q; ++k) times(2);
    return acc[static_cast<std::size_t>(m1)][static_cast<std::size_t>(m2)];
}

std::string describe_failure(const std::vector<RSeries>& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) return "component " + std::to_string(i) + " nonzero";
    return "";
}

void bialgebra_suite(Suite& s, Rng& rng)
{
    s.run("w1-canonical-cybe", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        std::string bad;
        for (int d : {-1, 1, 2, 3, 4}) {
            auto r = cybe_residual(w1_canonical(d, 8));
            cert = std::min(cert, r.certified_degree());
            if (!r.is_zero()) {
                ok = false;
                bad += " d=" + std::to_string(d);
            }
        }
        s.add("w1-canonical-cybe", ok && cert >= 7, cert, bad);
    });
    s.run("negative-control", [&] {
        const Truncation t2(2, 8), t3(3, 8);
        RBiField phi = RBiField::square(1, 8);
        phi.at(0, 0) = mul(var(t2, 0), var(t2, 0)) - mul(var(t2, 1), var(t2, 1));
        auto r = cybe_residual(phi);
        RSeries u = var(t3, 0), v = var(t3, 1), w = var(t3, 2);
        RSeries expected = Rational(-2) * mul(mul(u - v, v - w), w - u);
        const bool cybe_ok = r.at(0, 0, 0) == expected;
        RSeries uu = var(t2, 0) - var(t2, 1);
        const bool weak_ok = weak_diagonal_residual(phi) == Rational(2) * mul(uu, uu);
        RVectorField x(1, Truncation(1, 8));
        x[0] = power(var(Truncation(1, 8), 0), 3);
        auto g = gcybe_invariance_residual(phi, x);
        const Rational at = evaluate(g.at(0, 0, 0), {Rational(1), Rational(0), Rational(2)});
        s.add("negative-control", cybe_ok && weak_ok && at == -12, r.certified_degree(),
              "gcybe at (1,0,2) = " + to_display_string(at));
    });
    s.run("theta-psi", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        for (int k = 0; k < 10; ++k) {
            auto pair = random_theta_psi(k % 2 + 1, 6, rng);
            auto res = theta_psi_residual(pair);
            ok = ok && detail::all_zero(res);
            auto r = cybe_residual(rmatrix_from_theta_psi(pair));
            ok = ok && r.is_zero();
            cert = std::min(cert, r.certified_degree());
        }
        s.add("theta-psi", ok, cert);
    });
    s.run("cocycle", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        for (int k = 0; k < 10; ++k) {
            const int n = k % 2 + 1;
            auto phi = random_skew_bifield(n, 5, rng, SampleShape{1, 3, 2, 0.4});
            auto x = random_vector_field(n, 5, rng, SampleShape{0, 3, 2, 0.4});
            auto y = random_vector_field(n, 5, rng, SampleShape{0, 3, 2, 0.4});
            auto r = cocycle_residual(phi, x, y);
            ok = ok && r.is_zero();
            cert = std::min(cert, r.certified_degree());
        }
        s.add("cocycle", ok, cert);
    });
    s.run("weak-diagonal", [&] {
        bool ok = true;
        for (int d : {-1, 1, 2, 3}) ok = ok && weak_diagonal_residual(w1_canonical(d, 8)).is_zero();
        s.add("weak-diagonal", ok, 8);
    });
}

void series_suite(Suite& s, Rng& rng)
{
    s.run("unit-inverse", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        const Truncation tr(2, 8);
        for (int k = 0; k < 10; ++k) {
            RSeries f = RSeries::constant(tr, Rational(k + 1)) + random_series(tr, rng, SampleShape{1, 4, 3, 0.5});
            RSeries r = mul(f, invert_unit(f)) - RSeries::constant(tr, Rational(1));
            ok = ok && r.is_zero();
            cert = std::min(cert, r.certified_degree());
        }
        s.add("unit-inverse", ok, cert);
    });
    s.run("laurent-unit-inverse", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        const Truncation tr(2, 8, Exponent(std::vector<int>{-3, -3}));
        for (int k = 0; k < 10; ++k) {
            const Exponent lead(std::vector<int>{-(k % 3), -(k % 2)});
            RSeries f = RSeries::monomial(tr, lead, Rational(k + 2)) +
                        shift(random_series(Truncation(2, 8), rng, SampleShape{1, 3, 3, 0.5}), lead, Rational(1), 8)
                            .with_lower_bound(tr.min_exponent);
            RSeries g = invert_unit(f);
            RSeries r = mul(f, g) - RSeries::constant(mul(f, g).truncation(), Rational(1));
            ok = ok && r.is_zero();
            cert = std::min(cert, r.certified_degree());
        }
        s.add("laurent-unit-inverse", ok, cert);
    });
    s.run("leibniz", [&] {
        bool ok = true;
        const Truncation tr(3, 7);
        for (int k = 0; k < 10; ++k) {
            RSeries f = random_series(tr, rng, SampleShape{0, 3, 3, 0.4});
            RSeries g = random_series(tr, rng, SampleShape{0, 3, 3, 0.4});
            for (int v = 0; v < 3; ++v) {
                RSeries lhs = partial_derivative(mul(f, g), v);
                RSeries rhs = mul(partial_derivative(f, v), g) + mul(f, partial_derivative(g, v));
                ok = ok && (lhs - rhs).is_zero();
            }
        }
        s.add("leibniz", ok, 6);
    });
}

void jetgroup_suite(Suite& s, Rng& rng)
{
    s.run("g01-inversion-golden", [&] {
        const Truncation tr(1, 3);
        RFormalMap x = RFormalMap::identity(1, 3);
        x[0] = RSeries::from_terms(tr, {{Exponent(std::vector<int>{1}), Rational(2)},
                                        {Exponent(std::vector<int>{2}), Rational(3)},
                                        {Exponent(std::vector<int>{3}), Rational(5)}});
        auto y = invert(x);
        auto c = [&](int e) { return y[0].coefficient(Exponent(std::vector<int>{e})); };
        const bool ok = c(1) == Rational(1, 2) && c(2) == Rational(-3, 8) && c(3) == Rational(1, 4);
        s.add("g01-inversion-golden", ok, y[0].certified_degree(),
              to_display_string(c(1)) + ", " + to_display_string(c(2)) + ", " + to_display_string(c(3)));
    });
    s.run("inverse-roundtrip", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        for (int k = 0; k < 8; ++k) {
            const int n = k % 2 + 1;
            auto x = random_group_element(n, 6, rng);
            auto id = RFormalMap::identity(n, 6);
            auto a = compose(x, invert(x));
            auto b = compose(invert(x), x);
            for (int i = 0; i < n; ++i) {
                ok = ok && (a[i] - id[i]).is_zero() && (b[i] - id[i]).is_zero();
                cert = std::min({cert, a[i].certified_degree(), b[i].certified_degree()});
            }
        }
        s.add("inverse-roundtrip", ok, cert);
    });
    s.run("compose-associativity", [&] {
        bool ok = true;
        for (int k = 0; k < 6; ++k) {
            auto x = random_group_element(2, 6, rng);
            auto y = random_group_element(2, 6, rng);
            auto z = random_group_element(2, 6, rng);
            auto a = compose(compose(x, y), z);
            auto b = compose(x, compose(y, z));
            for (int i = 0; i < 2; ++i) ok = ok && (a[i] - b[i]).is_zero();
        }
        s.add("compose-associativity", ok, 6);
    });
}

void grouppoisson_suite(Suite& s, Rng& rng)
{
    s.run("appendix-n1-brackets", [&] {
        bool ok = true;
        std::string bad;
        for (int d = 1; d <= 3; ++d) {
            auto phi = canonical_rmatrix(IntegerMatrix(std::vector<std::vector<long long>>{{d}}), Normalization::Appendix, 8);
            auto om = omega_bifield(phi, SymbolicJet::make(1, false, 12));
            for (int i = 1; i <= 6; ++i)
                for (int j = 1; j <= 6; ++j) {
                    auto got = bracket_coefficient(om, Indeterminate{'x', 1, {i}}, Indeterminate{'x', 1, {j}});
                    if (got != golden::n1_bracket(i, j, d)) {
                        ok = false;
                        if (bad.empty()) bad = "d=" + std::to_string(d) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
                    }
                }
        }
        s.add("appendix-n1-brackets", ok, 12, bad);
    });
    s.run("appendix-n2-brackets", [&] {
        bool ok = true;
        std::string bad;
        const auto idx = multi_indices(2, 0, 3);
        for (const auto& d : {IntegerMatrix({{1, 0}, {0, 1}}), IntegerMatrix({{2, 1}, {1, 3}}), IntegerMatrix({{0, 1}, {1, 0}})}) {
            auto om = omega_bifield(canonical_rmatrix(d, Normalization::Appendix, 14), SymbolicJet::make(2, true, 6));
            for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}})
                for (const auto& m : idx)
                    for (const auto& n : idx) {
                        auto got = bracket_coefficient(om, Indeterminate{'x', p, m}, Indeterminate{'x', q, n});
                        if (got != golden::n2_bracket(p, q, d, m, n)) {
                            ok = false;
                            if (bad.empty()) bad = "family " + std::to_string(p) + std::to_string(q);
                        }
                    }
        }
        s.add("appendix-n2-brackets", ok, 6, bad);
    });
    s.run("coordinate-jacobi", [&] {
        bool ok = true;
        auto om = omega_bifield(w1_canonical(2, 8), SymbolicJet::make(1, false, 9));
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                for (int k = 1; k <= 3; ++k)
                    ok = ok && coordinate_jacobi_residual(om, Indeterminate{'x', 1, {i}}, Indeterminate{'x', 1, {j}},
                                                          Indeterminate{'x', 1, {k}})
                                   .is_zero();
        s.add("coordinate-jacobi", ok, 9);
    });
    s.run("multiplicativity", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        for (int k = 0; k < 6; ++k) {
            auto phi = random_skew_bifield(2, 5, rng, SampleShape{1, 3, 2, 0.3});
            auto r = multiplicativity_residual(phi, random_group_element(2, 5, rng), random_group_element(2, 5, rng));
            ok = ok && r.is_zero();
            cert = std::min(cert, r.certified_degree());
        }
        s.add("multiplicativity", ok, cert);
    });
}

void homspace_suite(Suite& s, Rng& rng)
{
    s.run("alpha-jacobi", [&] {
        bool ok = true;
        std::string bad;
        for (const auto& d : nonnegative_corpus(2, 2)) {
            if (d.determinant() == 0) continue;
            if (!detail::all_zero(alpha_jacobi_residual(canonical_alpha(d, Normalization::Raw, 8)))) {
                ok = false;
                bad = "D=" + to_json(d).dump();
            }
        }
        s.add("alpha-jacobi", ok, 8, bad);
    });
    s.run("alpha-action", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        const auto d = IntegerMatrix({{2, 1}, {1, 1}});
        const auto phi = canonical_rmatrix(d, Normalization::Raw, 8);
        const auto alpha = induced_alpha(phi);
        for (int k = 0; k < 4; ++k) {
            auto r = alpha_action_residual(alpha, phi, random_group_element(2, 8, rng));
            ok = ok && r.is_zero();
            cert = std::min(cert, r.certified_degree());
        }
        s.add("alpha-action", ok, cert);
    });
    s.run("jet-action", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        for (int k = 0; k < 4; ++k) {
            const int n = k % 2 + 1;
            auto phi_m = w1_canonical(1, 5);
            auto phi_n = n == 1 ? w1_canonical(2, 5) : canonical_rmatrix(IntegerMatrix::identity(2), Normalization::Raw, 5);
            RFormalMap f = random_group_element(1, 5, rng);
            if (n == 2) {
                RFormalMap g(1, 2, Truncation(1, 5));
                auto h = random_group_element(1, 5, rng);
                g[0] = f[0];
                g[1] = h[0];
                f = g;
            }
            auto r = jet_action_residual(phi_m, phi_n, random_group_element(1, 5, rng), random_group_element(n, 5, rng), f);
            ok = ok && r.is_zero();
            cert = std::min(cert, r.certified_degree());
        }
        s.add("jet-action", ok, cert);
    });
    s.run("pi-jacobi", [&] {
        bool ok = true;
        auto c = pi_jacobi_certificate(w1_canonical(1, 6), w1_canonical(1, 6), random_group_element(1, 6, rng));
        ok = ok && c.certified;
        s.add("pi-jacobi", ok, c.certified_degree);
    });
}

void classify_suite(Suite& s, Rng& rng)
{
    auto corpus_check = [&](const std::string& name, const std::vector<IntegerMatrix>& corpus) {
        s.run(name, [&] {
            bool ok = true;
            int cert = std::numeric_limits<int>::max();
            std::string bad;
            for (const auto& d : corpus) {
                if (d.determinant() == 0) continue;
                auto r = cybe_residual(canonical_rmatrix(d, Normalization::Raw, 8));
                cert = std::min(cert, r.certified_degree());
                if (!r.is_zero()) {
                    ok = false;
                    bad = "D=" + to_json(d).dump();
                }
            }
            s.add(name, ok && cert >= 7, cert, bad);
        });
    };
    corpus_check("canonical-cybe-n2", nonnegative_corpus(2, 2));
    {
        auto all = nonnegative_corpus(3, 2);
        std::vector<IntegerMatrix> sample;
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        for (int k = 0; k < 30; ++k) sample.push_back(all[pick(rng)]);
        corpus_check("canonical-cybe-n3-sample", sample);
    }
    s.run("appendix-n2-rmatrix", [&] {
        bool ok = true;
        for (const auto& d : {IntegerMatrix({{1, 0}, {0, 1}}), IntegerMatrix({{2, 1}, {1, 1}}), IntegerMatrix({{1, 2}, {0, 3}})})
            ok = ok && canonical_rmatrix(d, Normalization::Appendix, 10) == golden::n2_rmatrix(d, 10);
        s.add("appendix-n2-rmatrix", ok, 10);
    });
    s.run("appendix-scaling", [&] {
        bool ok = true;
        for (const auto& d : nonnegative_corpus(2, 2)) {
            const Integer det = d.determinant();
            if (det == 0) continue;
            ok = ok && canonical_rmatrix(d, Normalization::Appendix, 8) ==
                           scale(canonical_rmatrix(d, Normalization::Raw, 8), Rational(det * det));
        }
        s.add("appendix-scaling", ok, 8);
    });
    s.run("special-orbit", [&] {
        bool ok = true;
        for (int n = 1; n <= 3; ++n) ok = ok && cybe_residual(special_orbit_rmatrix(n, 8)).is_zero();
        s.add("special-orbit", ok, 8);
    });
    s.run("orbit-closure", [&] {
        bool ok = true;
        int cert = std::numeric_limits<int>::max();
        for (int k = 0; k < 3; ++k) {
            auto phi = canonical_rmatrix(IntegerMatrix({{1, 1}, {0, 1}}), Normalization::Raw, 6);
            auto r = cybe_residual(pushforward_bifield(random_group_element(2, 6, rng), phi));
            ok = ok && r.is_zero();
            cert = std::min(cert, r.certified_degree());
        }
        s.add("orbit-closure", ok, cert);
    });
    s.run("moduli", [&] {
        bool ok = true;
        const Truncation tr(1, 8, Exponent(std::vector<int>{-4}));
        for (int d = -1; d <= 4; ++d) {
            if (d == 0) continue;
            RSeries f = RSeries::monomial(tr, Exponent(std::vector<int>{-d}), Rational(-1));
            ok = ok && w1_general(f) == w1_canonical(d, 8);
        }
        s.add("moduli", ok, 8);
    });
    s.run("degeneracy", [&] {
        bool ok = true;
        for (const auto& d : nonnegative_corpus(2, 2)) ok = ok && (degeneracy_kernel(d).has_value() == (d.determinant() == 0));
        s.add("degeneracy", ok, std::nullopt);
    });
}

} // namespace

bool VerifyReport::passed() const
{
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const CheckResult* VerifyReport::first_failure() const
{
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"series", "jetgroup", "bialgebra", "grouppoisson", "homspace", "classify"};
    return names;
}

VerifyReport verify_suite(const std::vector<std::string>& scope, std::uint64_t seed)
{
    std::vector<std::string> run;
    for (const auto& s : scope) {
        if (s == "all") {
            run = suite_names();
            break;
        }
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw ParseError("unknown suite '" + s + "'");
        if (std::find(run.begin(), run.end(), s) == run.end()) run.push_back(s);
    }
    VerifyReport report;
    report.seed = seed;
    for (std::size_t k = 0; k < suite_names().size(); ++k) {
        const std::string& name = suite_names()[k];
        if (std::find(run.begin(), run.end(), name) == run.end()) continue;
        Rng rng(seed * 1000003u + k);
        Suite s{name, &report.checks};
        if (name == "series") series_suite(s, rng);
        if (name == "jetgroup") jetgroup_suite(s, rng);
        if (name == "bialgebra") bialgebra_suite(s, rng);
        if (name == "grouppoisson") grouppoisson_suite(s, rng);
        if (name == "homspace") homspace_suite(s, rng);
        if (name == "classify") classify_suite(s, rng);
    }
    return report;
}

VerifyReport verify_rmatrix(const RBiField& phi)
{
    VerifyReport report;
    Suite s{"rmatrix", &report.checks};
    const bool skew = is_skew(phi);
    s.add("skew", skew, phi.certified_degree(), skew ? "" : describe_failure(skew_defect(phi).comps));
    if (!skew) return report;
    s.run("cybe", [&] {
        auto r = cybe_residual(phi);
        s.add("cybe", r.is_zero(), r.certified_degree(), describe_failure(r.comps));
        s.add("cyclic-symmetry", cyclic_defect(r).is_zero(), r.certified_degree());
    });
    s.run("alpha-jacobi", [&] {
        auto r = alpha_jacobi_residual(induced_alpha(phi));
        s.add("alpha-jacobi", detail::all_zero(r), min_cert(r), describe_failure(r));
    });
    if (phi.dim == 1 && phi.block_vars == 1)
        s.run("weak-diagonal", [&] {
            auto r = weak_diagonal_residual(phi);
            s.add("weak-diagonal", r.is_zero(), r.certified_degree());
        });
    return report;
}

Json to_json(const VerifyReport& r)
{
    Json j;
    j["seed"] = r.seed;
    j["passed"] = r.passed();
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json x;
        x["suite"] = c.suite;
        x["check"] = c.name;
        x["pass"] = c.pass;
        if (c.certified_degree) x["certified_degree"] = *c.certified_degree;
        if (!c.detail.empty()) x["detail"] = c.detail;
        checks.push_back(std::move(x));
    }
    j["checks"] = std::move(checks);
    return j;
}

std::string to_text(const VerifyReport& r)
{
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.suite << '/' << c.name;
        if (c.certified_degree) os << " (degree " << *c.certified_degree << ')';
        if (!c.detail.empty()) os << ": " << c.detail;
        os << '\n';
    }
    os << (r.passed() ? "all checks passed" : "some checks failed") << '\n';
    return os.str();
}

namespace golden {

CoeffPoly n1_bracket(int i, int j, int d)
{
    CoeffPoly r = Rational((i - d) * j) * x1(j) * x1(i - d) - Rational(i * (j - d)) * x1(i) * x1(j - d);
    r += x1(i) * compositions(j, d + 1);
    r -= x1(j) * compositions(i, d + 1);
    return r;
}

CoeffPoly n2_bracket(int p, int q, const IntegerMatrix& dm, const std::vector<int>& m, const std::vector<int>& n)
{
    if (dm.n != 2) throw ShapeError("n = 2 bracket needs a 2x2 matrix");
    if (m.size() != 2 || n.size() != 2) throw ShapeError("multi-indices must have two entries");
    const long long a = dm.at(0, 0), b = dm.at(0, 1), c = dm.at(1, 0), d = dm.at(1, 1);
    const long long det = a * d - b * c;
    const int m1 = m[0], m2 = m[1], n1 = n[0], n2 = n[1];
    auto R = [](long long v) { return Rational(static_cast<long>(v)); };
    auto X = [](int comp, long long i1, long long i2) { return x2(comp, static_cast<int>(i1), static_cast<int>(i2)); };
    auto P = [](long long s, long long t, int e1, int e2) {
        return product_coefficient(static_cast<int>(s), static_cast<int>(t), e1, e2);
    };
    CoeffPoly r = R((b - d) * n1 + (c - a) * n2) *
                      (R(d * m1 - c * m2 - det) * X(p, m1 - a, m2 - b) * X(q, n1, n2) +
                       R(-b * m1 + a * m2 - det) * X(p, m1 - c, m2 - d) * X(q, n1, n2)) +
                  R((b - d) * m1 + (c - a) * m2) *
                      (R(-d * n1 + c * n2 + det) * X(p, m1, m2) * X(q, n1 - a, n2 - b) +
                       R(b * n1 - a * n2 + det) * X(p, m1, m2) * X(q, n1 - c, n2 - d));
    if (p == 1 && q == 1) {
        r -= R(d * (b - d)) * X(1, n1, n2) * P(a + 1, b, m1, m2);
        r += R(d * (b - d)) * X(1, m1, m2) * P(a + 1, b, n1, n2);
        r += R(b * (b - d)) * X(1, n1, n2) * P(c + 1, d, m1, m2);
        r -= R(b * (b - d)) * X(1, m1, m2) * P(c + 1, d, n1, n2);
    } else if (p == 1 && q == 2) {
        r -= R(c * (b - d)) * X(1, m1, m2) * P(a, b + 1, n1, n2);
        r += R(a * (b - d)) * X(1, m1, m2) * P(c, d + 1, n1, n2);
        r -= R(d * (c - a)) * X(2, n1, n2) * P(a + 1, b, m1, m2);
        r += R(b * (c - a)) * X(2, n1, n2) * P(c + 1, d, m1, m2);
    } else if (p == 2 && q == 2) {
        r += R(c * (c - a)) * X(2, n1, n2) * P(a, b + 1, m1, m2);
        r -= R(c * (c - a)) * X(2, m1, m2) * P(a, b + 1, n1, n2);
        r -= R(a * (c - a)) * X(2, n1, n2) * P(c, d + 1, m1, m2);
        r += R(a * (c - a)) * X(2, m1, m2) * P(c, d + 1, n1, n2);
    } else {
        throw RangeError("bracket family must be (1,1), (1,2) or (2,2)");
    }
    return r;
}

RBiField n2_rmatrix(const IntegerMatrix& dm, int max_degree)
{
    if (dm.n != 2) throw ShapeError("n = 2 r-matrix needs a 2x2 matrix");
    const long a = static_cast<long>(dm.at(0, 0)), b = static_cast<long>(dm.at(0, 1));
    const long c = static_cast<long>(dm.at(1, 0)), d = static_cast<long>(dm.at(1, 1));
    const Truncation tr(4, max_degree);
    auto mono = [&](int e1, int e2, int e3, int e4) {
        return RSeries::monomial(tr, Exponent(std::vector<int>{e1, e2, e3, e4}), Rational(1));
    };
    auto w = [&](int ua, int ub, int va, int vb) { return mono(ua, ub, va, vb); };
    const int ia = static_cast<int>(a), ib = static_cast<int>(b), ic = static_cast<int>(c), id = static_cast<int>(d);
    RSeries uab = w(ia, ib, 0, 0), ucd = w(ic, id, 0, 0), vab = w(0, 0, ia, ib), vcd = w(0, 0, ic, id);
    RBiField phi = RBiField::square(2, max_degree);
    phi.at(0, 0) = mul(mono(1, 0, 1, 0), Rational((b - d) * d) * (uab - vab) - Rational((b - d) * b) * (ucd - vcd));
    phi.at(0, 1) = mul(mono(1, 0, 0, 1), Rational(b - d) * (Rational(c) * vab - Rational(a) * vcd) +
                                             Rational(c - a) * (Rational(d) * uab - Rational(b) * ucd));
    phi.at(1, 0) = mul(mono(0, 1, 1, 0), Rational(c - a) * (Rational(-d) * vab + Rational(b) * vcd) +
                                             Rational(b - d) * (Rational(-c) * uab + Rational(a) * ucd));
    phi.at(1, 1) = mul(mono(0, 1, 0, 1), Rational((a - c) * c) * (uab - vab) - Rational((a - c) * a) * (ucd - vcd));
    return phi;
}

} // namespace golden

} // namespace fdiff
