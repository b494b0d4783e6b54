#include "fdiff/homspace.hpp"

#include <algorithm>

#include "fdiff/bialgebra.hpp"

namespace fdiff {

namespace {

std::vector<RSeries> doubled_args(const RFormalMap& f, int blocks_total, int first_block)
{
    std::vector<RSeries> args;
    for (int b = first_block; b < first_block + 2; ++b) {
        const auto e = VariableMap::embed(f.source_dim, b, blocks_total);
        for (const auto& s : f.comps) args.push_back(relabel_blocks(s, e));
    }
    return args;
}

std::vector<RSeries> jacobian_entries_at(const RFormalMap& f, const std::vector<RSeries>& at)
{
    std::vector<RSeries> out;
    const auto j = derivative_matrix(f);
    for (const auto& e : j.entries()) out.push_back(substitute(e, at));
    return out;
}

void require_phi(const RBiField& phi, int n, const char* what)
{
    if (phi.dim != n || phi.block_vars != n) throw ShapeError(what);
}

} // namespace

RBiVector induced_alpha(const RBiField& phi)
{
    if (phi.block_vars != phi.dim) throw ShapeError("bifield block size differs from its dimension");
    if (!is_skew(phi)) throw PreconditionError("bifield is not skew-symmetric");
    const int n = phi.dim;
    const auto diag = VariableMap::diagonal(n, 2);
    RBiVector a(n, Truncation(n, phi.max_degree()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = -relabel_blocks(phi.at(i, j), diag);
    return a;
}

std::vector<RSeries> alpha_jacobi_residual(const RBiVector& alpha)
{
    const int n = alpha.dim;
    std::vector<RSeries> d;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int s = 0; s < n; ++s) d.push_back(partial_derivative(alpha.at(i, j), s));
    auto da = [&](int i, int j, int s) -> const RSeries& { return d[static_cast<std::size_t>((i * n + j) * n + s)]; };
    std::vector<RSeries> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                RSeries acc(alpha.at(0, 0).truncation());
                for (int s = 0; s < n; ++s) {
                    acc = acc + mul(alpha.at(k, s), da(i, j, s));
                    acc = acc + mul(alpha.at(i, s), da(j, k, s));
                    acc = acc + mul(alpha.at(j, s), da(k, i, s));
                }
                out.push_back(acc);
            }
    return out;
}

RBiVector alpha_action_residual(const RBiVector& alpha, const RBiField& phi, const RFormalMap& x)
{
    const int n = alpha.dim;
    require_phi(phi, n, "r-matrix and bivector differ in dimension");
    if (x.source_dim != n || x.target_dim != n) throw ShapeError("group element and bivector differ in dimension");
    if (detail::has_constant_term(x)) throw UnsupportedError("action check for a jet with a constant term");
    RBiField omega = transported_difference(x, phi, phi);
    const auto diag = VariableMap::diagonal(n, 2);
    SeriesMatrix<Rational> j = derivative_matrix(x);
    RBiVector out = alpha;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            RSeries acc = substitute(alpha.at(i, k), x.comps) - relabel_blocks(omega.at(i, k), diag);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const RSeries& s = alpha.at(a, b);
                    if (s.is_zero() && s.is_exact()) continue;
                    acc = acc - mul(mul(j.at(i, a), j.at(k, b)), s);
                }
            out.at(i, k) = acc;
        }
    return out;
}

JetBiField jet_pi(const RFormalMap& f, const RBiField& phi_m, const RBiField& phi_n)
{
    for (const auto* phi : {&phi_m, &phi_n})
        for (const auto& s : phi->comps)
            if (s.has_negative_exponents()) throw UnsupportedError("jet bracket for a Laurent r-matrix");
    return transported_difference(f, phi_m, phi_n);
}

JetBiField jet_action_residual(const PiLaw& pi, const RBiField& phi_m, const RBiField& phi_n, const RFormalMap& x,
                               const RFormalMap& y, const RFormalMap& f)
{
    const int m = f.source_dim;
    const int n = f.target_dim;
    require_phi(phi_m, m, "source r-matrix dimension differs from the jet source");
    require_phi(phi_n, n, "target r-matrix dimension differs from the jet target");
    if (x.source_dim != m || x.target_dim != m) throw ShapeError("source group element has wrong dimension");
    if (y.source_dim != n || y.target_dim != n) throw ShapeError("target group element has wrong dimension");
    if (detail::has_constant_term(x) || detail::has_constant_term(y) || detail::has_constant_term(f))
        throw UnsupportedError("action check for jets with constant terms");

    RFormalMap xinv = invert(x);
    RFormalMap g = compose(f, xinv);
    RFormalMap fbar = compose(y, g);
    JetBiField lhs = pi(fbar);

    const auto eu = VariableMap::embed(m, 0, 2);
    const auto ev = VariableMap::embed(m, 1, 2);
    auto split = [&](const std::vector<RSeries>& e, const VariableMap& vm) {
        std::vector<RSeries> r;
        for (const auto& s : e) r.push_back(relabel_blocks(s, vm));
        return r;
    };
    const auto yg = jacobian_entries_at(y, g.comps);
    const auto fx = jacobian_entries_at(f, xinv.comps);
    const auto ygu = split(yg, eu), ygv = split(yg, ev);
    const auto fxu = split(fx, eu), fxv = split(fx, ev);

    // A = Y_*(G) F_*(X^{-1}), an n x m matrix per block.
    std::vector<RSeries> au, av;
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < m; ++s) {
            RSeries pu(ygu.front().truncation()), pv(ygv.front().truncation());
            for (int k = 0; k < n; ++k) {
                pu = pu + mul(ygu[static_cast<std::size_t>(i * n + k)], fxu[static_cast<std::size_t>(k * m + s)]);
                pv = pv + mul(ygv[static_cast<std::size_t>(i * n + k)], fxv[static_cast<std::size_t>(k * m + s)]);
            }
            au.push_back(pu);
            av.push_back(pv);
        }

    JetBiField pi_f = pi(f);
    const auto xargs = doubled_args(xinv, 2, 0);
    const auto gargs = doubled_args(g, 2, 0);
    RBiField omega_m = transported_difference(xinv, phi_m, phi_m);
    RBiField omega_n = transported_difference(y, phi_n, phi_n);

    std::vector<RSeries> pi_moved, omega_n_moved;
    for (const auto& s : pi_f.comps) pi_moved.push_back(substitute(s, xargs));
    for (const auto& s : omega_n.comps) omega_n_moved.push_back(substitute(s, gargs));

    JetBiField out = lhs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RSeries acc = omega_n_moved[static_cast<std::size_t>(i * n + j)];
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const RSeries& p = pi_moved[static_cast<std::size_t>(k * n + l)];
                    if (p.is_zero() && p.is_exact()) continue;
                    acc = acc + mul(mul(ygu[static_cast<std::size_t>(i * n + k)], ygv[static_cast<std::size_t>(j * n + l)]), p);
                }
            for (int s = 0; s < m; ++s)
                for (int r = 0; r < m; ++r) {
                    const RSeries& o = omega_m.at(s, r);
                    if (o.is_zero() && o.is_exact()) continue;
                    acc = acc + mul(mul(au[static_cast<std::size_t>(i * m + s)], av[static_cast<std::size_t>(j * m + r)]), o);
                }
            out.at(i, j) = lhs.at(i, j) - acc;
        }
    return out;
}

JetBiField jet_action_residual(const RBiField& phi_m, const RBiField& phi_n, const RFormalMap& x, const RFormalMap& y,
                               const RFormalMap& f)
{
    PiLaw law = [&](const RFormalMap& g) { return jet_pi(g, phi_m, phi_n); };
    return jet_action_residual(law, phi_m, phi_n, x, y, f);
}

PiJacobiCertificate pi_jacobi_certificate(const RBiField& phi_m, const RBiField& phi_n, const RFormalMap& f)
{
    const int m = f.source_dim;
    const int n = f.target_dim;
    require_phi(phi_m, m, "source r-matrix dimension differs from the jet source");
    require_phi(phi_n, n, "target r-matrix dimension differs from the jet target");
    RTriField phim = cybe_residual(phi_m);
    RTriField phin = cybe_residual(phi_n);
    const int nmax = f.max_degree();
    const Truncation tr(3 * m, nmax);

    std::vector<RSeries> args;
    std::vector<std::vector<RSeries>> jb(3);
    SeriesMatrix<Rational> j = derivative_matrix(f);
    for (int b = 0; b < 3; ++b) {
        const auto e = VariableMap::embed(m, b, 3);
        for (const auto& s : f.comps) args.push_back(relabel_blocks(s, e));
        for (const auto& s : j.entries()) jb[static_cast<std::size_t>(b)].push_back(relabel_blocks(s, e));
    }
    auto jat = [&](int b, int i, int mu) -> const RSeries& {
        return jb[static_cast<std::size_t>(b)][static_cast<std::size_t>(i * m + mu)];
    };

    PiJacobiCertificate c;
    c.left = RTriField(n, m, tr);
    c.right = RTriField(n, m, tr);
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k) {
                const RSeries& q = phin.at(i, jj, k);
                c.left.at(i, jj, k) = (q.is_zero() && q.is_exact()) ? RSeries(tr) : substitute(q, args).with_max_degree(nmax);
                RSeries acc(tr);
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b)
                        for (int s = 0; s < m; ++s) {
                            const RSeries& p = phim.at(a, b, s);
                            if (p.is_zero() && p.is_exact()) continue;
                            acc = acc + mul(mul(mul(jat(0, i, a), jat(1, jj, b)), jat(2, k, s)), p.with_max_degree(nmax));
                        }
                c.right.at(i, jj, k) = acc;
            }
    c.both_vanish = c.left.is_zero() && c.right.is_zero();
    c.certified = true;
    c.certified_degree = nmax;
    for (std::size_t t = 0; t < c.left.comps.size(); ++t) {
        RSeries d = c.left.comps[t] - c.right.comps[t];
        if (!d.is_zero()) c.certified = false;
        c.certified_degree = std::min(c.certified_degree, d.certified_degree());
    }
    return c;
}

} // namespace fdiff
