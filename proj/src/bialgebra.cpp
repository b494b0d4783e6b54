#include "fdiff/bialgebra.hpp"

#include <algorithm>

#include "fdiff/series_matrix.hpp"

namespace fdiff {

namespace {

constexpr int U = 0;
constexpr int V = 1;
constexpr int W = 2;

void require_generators(const GeneratorTuple& f)
{
    if (f.gens.empty()) throw ShapeError("empty generator tuple");
    const int n = f.dim();
    for (const auto& g : f.gens) {
        if (g.nvars() != n) throw ShapeError("generator has wrong variable count");
        if (g.max_degree() != f.gens.front().max_degree()) throw ShapeError("generators have different truncation orders");
    }
}

// Cutoff wide enough that products with the generators (degree down to
// their valuation) still reach the target cutoff.
int working_cap(const GeneratorTuple& f)
{
    int v = 0;
    for (const auto& g : f.gens)
        if (!g.is_zero()) v = std::min(v, g.valuation());
    return f.gens.front().max_degree() - v;
}

SeriesMatrix<Rational> inverse_jacobian(const GeneratorTuple& f, int cap)
{
    const int n = f.dim();
    Truncation tr(n, cap);
    SeriesMatrix<Rational> j(n, n, tr);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) j.at(i, k) = partial_derivative(f[i].with_max_degree(cap), k);
    try {
        return matrix_inverse(j).first;
    } catch (const SingularError& e) {
        throw SingularError(std::string("generator Jacobian is not invertible: ") + e.what());
    }
}

RSeries place(const RSeries& s, int n, int p, int q)
{
    return relabel_blocks(s, VariableMap::blocks(n, {p, q}, 3));
}

void require_skew(const RBiField& phi)
{
    if (phi.block_vars != phi.dim) throw ShapeError("bifield block size differs from its dimension");
    if (!is_skew(phi)) throw PreconditionError("bifield is not skew-symmetric");
}


} // namespace

RBiField rmatrix_from_generators(const GeneratorTuple& f)
{
    require_generators(f);
    const int n = f.dim();
    const int nmax = f.gens.front().max_degree();
    const int cap = working_cap(f);
    SeriesMatrix<Rational> jinv = inverse_jacobian(f, cap);
    const auto eu = VariableMap::embed(n, 0, 2);
    const auto ev = VariableMap::embed(n, 1, 2);
    std::vector<RSeries> fu, fv;
    for (const auto& g : f.gens) {
        RSeries w = g.with_max_degree(cap);
        fu.push_back(relabel_blocks(w, eu));
        fv.push_back(relabel_blocks(w, ev));
    }
    const Truncation tr(2 * n, cap);
    RBiField phi(n, n, Truncation(2 * n, nmax));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RSeries acc(tr);
            for (int k = 0; k < n; ++k) {
                RSeries a = relabel_blocks(jinv.at(i, k), eu);
                if (a.is_zero() && a.is_exact()) continue;
                for (int l = 0; l < n; ++l) {
                    RSeries b = relabel_blocks(jinv.at(j, l), ev);
                    if (b.is_zero() && b.is_exact()) continue;
                    acc = acc + mul(mul(a, fu[static_cast<std::size_t>(k)] - fv[static_cast<std::size_t>(l)]), b);
                }
            }
            phi.at(i, j) = acc.with_max_degree(nmax);
        }
    return phi;
}

ThetaPsiPair theta_psi_from_generators(const GeneratorTuple& f)
{
    require_generators(f);
    const int n = f.dim();
    const int nmax = f.gens.front().max_degree();
    const int cap = working_cap(f);
    SeriesMatrix<Rational> jinv = inverse_jacobian(f, cap);
    ThetaPsiPair p;
    p.alpha = 0;
    p.beta = 1;
    const Truncation tr(n, cap);
    for (int i = 0; i < n; ++i) {
        RSeries theta(tr), psi(tr);
        for (int k = 0; k < n; ++k) {
            theta = theta + mul(jinv.at(i, k), f[k].with_max_degree(cap));
            psi = psi + jinv.at(i, k);
        }
        p.theta.push_back(theta.with_max_degree(nmax));
        p.psi.push_back(psi.with_max_degree(nmax));
    }
    return p;
}

RBiField rmatrix_from_theta_psi(const ThetaPsiPair& pair)
{
    const int n = static_cast<int>(pair.theta.size());
    if (n == 0 || static_cast<int>(pair.psi.size()) != n) throw ShapeError("theta and psi tuples differ in length");
    const int nmax = pair.theta.front().max_degree();
    const auto eu = VariableMap::embed(n, 0, 2);
    const auto ev = VariableMap::embed(n, 1, 2);
    RBiField phi(n, n, Truncation(2 * n, nmax));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RSeries a = mul(relabel_blocks(pair.theta[static_cast<std::size_t>(i)], eu),
                            relabel_blocks(pair.psi[static_cast<std::size_t>(j)], ev));
            RSeries b = mul(relabel_blocks(pair.theta[static_cast<std::size_t>(j)], ev),
                            relabel_blocks(pair.psi[static_cast<std::size_t>(i)], eu));
            phi.at(i, j) = a - b;
        }
    return phi;
}

std::vector<RSeries> theta_psi_residual(const ThetaPsiPair& pair)
{
    const int n = static_cast<int>(pair.theta.size());
    if (n == 0 || static_cast<int>(pair.psi.size()) != n) throw ShapeError("theta and psi tuples differ in length");
    std::vector<RSeries> r;
    for (int i = 0; i < n; ++i) {
        const RSeries& th = pair.theta[static_cast<std::size_t>(i)];
        const RSeries& ps = pair.psi[static_cast<std::size_t>(i)];
        RSeries acc = scale(th, -pair.alpha) - scale(ps, pair.beta);
        for (int s = 0; s < n; ++s) {
            acc = acc + mul(pair.psi[static_cast<std::size_t>(s)], partial_derivative(th, s));
            acc = acc - mul(pair.theta[static_cast<std::size_t>(s)], partial_derivative(ps, s));
        }
        r.push_back(acc);
    }
    return r;
}

RTriField cybe_residual(const RBiField& phi)
{
    require_skew(phi);
    const int n = phi.dim;
    const int nmax = phi.max_degree();
    const Truncation tr(3 * n, nmax);

    // phi^{ab} placed on (w,u), (v,w), (u,v).
    auto pidx = [n](int a, int b) { return static_cast<std::size_t>(a * n + b); };
    std::vector<RSeries> wu, vw, uv;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            wu.push_back(place(phi.at(a, b), n, W, U));
            vw.push_back(place(phi.at(a, b), n, V, W));
            uv.push_back(place(phi.at(a, b), n, U, V));
        }
    // d phi^{ab} / d(first argument)^s placed on every ordered block pair.
    const int pairs[6][2] = {{U, V}, {V, U}, {V, W}, {W, V}, {W, U}, {U, W}};
    std::vector<std::vector<RSeries>> dphi(6);
    for (int p = 0; p < 6; ++p)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int s = 0; s < n; ++s)
                    dphi[static_cast<std::size_t>(p)].push_back(
                        place(partial_derivative(phi.at(a, b), s), n, pairs[p][0], pairs[p][1]));
    auto d = [&](int p, int a, int b, int s) -> const RSeries& {
        return dphi[static_cast<std::size_t>(p)][static_cast<std::size_t>((a * n + b) * n + s)];
    };
    enum { dUV, dVU, dVW, dWV, dWU, dUW };

    RTriField out(n, n, tr);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::vector<std::pair<const RSeries*, const RSeries*>> f;
                for (int s = 0; s < n; ++s) {
                    f.emplace_back(&wu[pidx(k, s)], &d(dUV, i, j, s));
                    f.emplace_back(&vw[pidx(s, k)], &d(dVU, j, i, s));
                    f.emplace_back(&uv[pidx(i, s)], &d(dVW, j, k, s));
                    f.emplace_back(&wu[pidx(s, i)], &d(dWV, k, j, s));
                    f.emplace_back(&vw[pidx(j, s)], &d(dWU, k, i, s));
                    f.emplace_back(&uv[pidx(s, j)], &d(dUW, i, k, s));
                }
                out.at(i, j, k) = sum_of_products(f);
            }
    return out;
}

RTriField cyclic_defect(const RTriField& phi)
{
    const int n = phi.dim;
    // Phi^{jki}(v,w,u): variables (u,v,w) of the stored component become (v,w,u).
    const auto rot = VariableMap::blocks(phi.block_vars, {1, 2, 0}, 3);
    RTriField out = phi;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out.at(i, j, k) = phi.at(i, j, k) - relabel_blocks(phi.at(j, k, i), rot);
    return out;
}

RSeries weak_diagonal_residual(const RBiField& phi)
{
    if (phi.dim != 1) throw UnsupportedError("weak diagonal equation is defined for one dimension only");
    require_skew(phi);
    const RSeries& p = phi.at(0, 0);
    RSeries pu = partial_derivative(p, 0);
    RSeries pv = partial_derivative(p, 1);
    // f(v) = d_1 phi(v, v)
    RSeries f = relabel_blocks(relabel_blocks(pu, VariableMap::diagonal(1, 2)), VariableMap::embed(1, 1, 2));
    RSeries fp = partial_derivative(f, 1);
    return mul(pv, pu) - mul(p, partial_derivative(pu, 1)) + mul(fp, p) - mul(f, pv);
}

RVectorField lie_bracket(const RVectorField& x, const RVectorField& y)
{
    if (x.dim != y.dim) throw ShapeError("vector fields have different dimensions");
    const int n = x.dim;
    RVectorField r = x;
    for (int j = 0; j < n; ++j) {
        RSeries acc(x[0].truncation());
        for (int i = 0; i < n; ++i) {
            acc = acc + mul(x[i], partial_derivative(y[j], i));
            acc = acc - mul(y[i], partial_derivative(x[j], i));
        }
        r[j] = acc;
    }
    return r;
}

RBiField ad_on_bifield(const RVectorField& x, const RBiField& phi)
{
    const int n = phi.dim;
    if (x.dim != n || phi.block_vars != n) throw ShapeError("vector field and bifield dimensions differ");
    const auto eu = VariableMap::embed(n, 0, 2);
    const auto ev = VariableMap::embed(n, 1, 2);
    std::vector<RSeries> xu, xv;
    std::vector<RSeries> dxu, dxv;
    for (int i = 0; i < n; ++i) {
        xu.push_back(relabel_blocks(x[i], eu));
        xv.push_back(relabel_blocks(x[i], ev));
        for (int k = 0; k < n; ++k) {
            RSeries d = partial_derivative(x[i], k);
            dxu.push_back(relabel_blocks(d, eu));
            dxv.push_back(relabel_blocks(d, ev));
        }
    }
    auto dx = [n](const std::vector<RSeries>& v, int i, int k) -> const RSeries& {
        return v[static_cast<std::size_t>(i * n + k)];
    };
    RBiField out = phi;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const RSeries& p = phi.at(i, j);
            RSeries acc(p.truncation());
            for (int k = 0; k < n; ++k) {
                acc = acc + mul(xu[static_cast<std::size_t>(k)], partial_derivative(p, k));
                acc = acc - mul(phi.at(k, j), dx(dxu, i, k));
                acc = acc + mul(xv[static_cast<std::size_t>(k)], partial_derivative(p, n + k));
                acc = acc - mul(phi.at(i, k), dx(dxv, j, k));
            }
            out.at(i, j) = acc;
        }
    return out;
}

RBiField coboundary_delta(const RVectorField& x, const RBiField& phi) { return ad_on_bifield(x, phi); }

RBiField cocycle_residual(const RBiField& phi, const RVectorField& x, const RVectorField& y)
{
    RBiField lhs = coboundary_delta(lie_bracket(x, y), phi);
    RBiField rhs = ad_on_bifield(x, coboundary_delta(y, phi)) - ad_on_bifield(y, coboundary_delta(x, phi));
    return lhs - rhs;
}

RTriField gcybe_invariance_residual(const RBiField& phi, const RVectorField& x)
{
    RTriField p = cybe_residual(phi);
    const int n = phi.dim;
    if (x.dim != n) throw ShapeError("vector field and bifield dimensions differ");
    std::vector<std::vector<RSeries>> xb(3), dxb(3);
    for (int b = 0; b < 3; ++b) {
        const auto e = VariableMap::embed(n, b, 3);
        for (int i = 0; i < n; ++i) {
            xb[static_cast<std::size_t>(b)].push_back(relabel_blocks(x[i], e));
            for (int s = 0; s < n; ++s) dxb[static_cast<std::size_t>(b)].push_back(relabel_blocks(partial_derivative(x[i], s), e));
        }
    }
    auto dx = [&](int b, int i, int s) -> const RSeries& {
        return dxb[static_cast<std::size_t>(b)][static_cast<std::size_t>(i * n + s)];
    };
    RTriField out = p;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const RSeries& f = p.at(i, j, k);
                RSeries acc(f.truncation());
                for (int s = 0; s < n; ++s) {
                    for (int b = 0; b < 3; ++b)
                        acc = acc + mul(xb[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)], partial_derivative(f, b * n + s));
                    acc = acc - mul(dx(U, i, s), p.at(s, j, k));
                    acc = acc - mul(dx(V, j, s), p.at(i, s, k));
                    acc = acc - mul(dx(W, k, s), p.at(i, j, s));
                }
                out.at(i, j, k) = acc;
            }
    return out;
}

RBiField w1_general(const RSeries& f)
{
    if (f.nvars() != 1) throw ShapeError("W_1 generator must be a series in one variable");
    const int nmax = f.max_degree();
    const int cap = nmax + std::max(0, f.is_zero() ? 0 : -f.valuation());
    RSeries fw = f.with_max_degree(cap);
    RSeries g;
    try {
        g = invert_unit(partial_derivative(fw, 0));
    } catch (const UnitError& e) {
        throw SingularError(std::string("derivative of the generator is not a unit: ") + e.what());
    }
    const auto eu = VariableMap::embed(1, 0, 2);
    const auto ev = VariableMap::embed(1, 1, 2);
    RSeries diff = relabel_blocks(fw, eu) - relabel_blocks(fw, ev);
    RSeries phi = mul(mul(relabel_blocks(g, eu), diff), relabel_blocks(g, ev));
    RBiField out(1, 1, Truncation(2, nmax));
    out.at(0, 0) = phi.with_max_degree(nmax);
    return out;
}

RBiField w1_canonical(int d, int max_degree)
{
    if (d < -1) throw DomainError("W_1 modulus below -1 lies outside the canonical family");
    Truncation tr(2, max_degree);
    RBiField out(1, 1, tr);
    if (d == 0) return out;
    Rational c(1, d * d);
    std::vector<RSeries::Term> t;
    t.emplace_back(Exponent{d + 1, 1}, c);
    t.emplace_back(Exponent{1, d + 1}, -c);
    out.at(0, 0) = RSeries::from_terms(tr, std::move(t));
    return out;
}

} // namespace fdiff

