#include "fdiff/io.hpp"

#include <fstream>
#include <sstream>

namespace fdiff {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg)
{
    throw ParseError((path.empty() ? std::string("/") : path) + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& path)
{
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

int as_int(const Json& j, const std::string& path)
{
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

long long as_long(const Json& j, const std::string& path)
{
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

const Json& as_array(const Json& j, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

std::vector<int> int_list(const Json& j, const std::string& path)
{
    std::vector<int> v;
    const Json& a = as_array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(as_int(a[i], path + "/" + std::to_string(i)));
    return v;
}

Rational rational_field(const Json& j, const std::string& path)
{
    if (!j.is_string()) fail(path, "expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        fail(path, e.what());
    }
}

Json truncation_json(const Truncation& tr)
{
    Json t;
    t["max_total_degree"] = tr.max_degree;
    t["min_exponent"] = tr.min_exponent.to_vector(tr.nvars);
    return t;
}

template <class C>
Json series_json(const Series<C>& s, Json (*coeff)(const C&))
{
    Json j;
    j["nvars"] = s.nvars();
    j["trunc"] = truncation_json(s.truncation());
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) {
        Json t;
        t["e"] = e.to_vector(s.nvars());
        t["c"] = coeff(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    if (!s.is_exact()) j["certified_degree"] = s.certified_degree();
    return j;
}

Json rational_coeff(const Rational& c) { return to_json_string(c); }
Json poly_coeff(const CoeffPoly& c) { return to_json(c); }

template <class C, class Reader>
Series<C> series_read(const Json& j, const std::string& path, Reader coeff)
{
    const int nvars = as_int(field(j, "nvars", path), path + "/nvars");
    if (nvars < 0 || nvars > kMaxVars) fail(path + "/nvars", "variable count out of range");
    const Json& tr = field(j, "trunc", path);
    const int n = as_int(field(tr, "max_total_degree", path + "/trunc"), path + "/trunc/max_total_degree");
    std::vector<int> lower = int_list(field(tr, "min_exponent", path + "/trunc"), path + "/trunc/min_exponent");
    if (static_cast<int>(lower.size()) != nvars) fail(path + "/trunc/min_exponent", "length differs from nvars");
    for (int l : lower)
        if (l > 0) fail(path + "/trunc/min_exponent", "lower bounds must be <= 0");
    Truncation t(nvars, n, Exponent(lower));
    std::optional<int> prec;
    if (j.contains("certified_degree")) prec = as_int(j["certified_degree"], path + "/certified_degree");
    const Json& terms = as_array(field(j, "terms", path), path + "/terms");
    std::vector<typename Series<C>::Term> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string p = path + "/terms/" + std::to_string(i);
        std::vector<int> e = int_list(field(terms[i], "e", p), p + "/e");
        if (static_cast<int>(e.size()) != nvars) fail(p + "/e", "length differs from nvars");
        int deg = 0;
        for (int k = 0; k < nvars; ++k) {
            if (e[static_cast<std::size_t>(k)] < lower[static_cast<std::size_t>(k)]) fail(p + "/e", "exponent below the lower bound");
            deg += e[static_cast<std::size_t>(k)];
        }
        if (deg > n) fail(p + "/e", "total degree exceeds the truncation order");
        if (prec && deg > *prec) fail(p + "/e", "term beyond the certified degree");
        C c = coeff(field(terms[i], "c", p), p + "/c");
        try {
            out.emplace_back(Exponent(e), std::move(c));
        } catch (const Error& err) {
            fail(p + "/e", err.what());
        }
    }
    return Series<C>::from_terms(t, std::move(out), prec);
}

template <class C>
Json bifield_json(const BiField<C>& phi)
{
    Json j;
    j["dim"] = phi.dim;
    j["block_vars"] = phi.block_vars;
    Json rows = Json::array();
    for (int i = 0; i < phi.dim; ++i) {
        Json row = Json::array();
        for (int k = 0; k < phi.dim; ++k) row.push_back(to_json(phi.at(i, k)));
        rows.push_back(std::move(row));
    }
    j["components"] = std::move(rows);
    return j;
}

template <class C, class Reader>
BiField<C> bifield_read(const Json& j, const std::string& path, Reader read)
{
    const int n = as_int(field(j, "dim", path), path + "/dim");
    if (n < 1) fail(path + "/dim", "dimension must be positive");
    const int m = j.contains("block_vars") ? as_int(j["block_vars"], path + "/block_vars") : n;
    const Json& rows = as_array(field(j, "components", path), path + "/components");
    if (static_cast<int>(rows.size()) != n) fail(path + "/components", "row count differs from dim");
    BiField<C> phi;
    phi.dim = n;
    phi.block_vars = m;
    for (int i = 0; i < n; ++i) {
        const std::string p = path + "/components/" + std::to_string(i);
        const Json& row = as_array(rows[static_cast<std::size_t>(i)], p);
        if (static_cast<int>(row.size()) != n) fail(p, "column count differs from dim");
        for (int k = 0; k < n; ++k) {
            const std::string q = p + "/" + std::to_string(k);
            Series<C> s = read(row[static_cast<std::size_t>(k)], q);
            if (s.nvars() != 2 * m) fail(q, "component must have 2*block_vars variables");
            phi.comps.push_back(std::move(s));
        }
    }
    for (const auto& s : phi.comps)
        if (s.max_degree() != phi.comps.front().max_degree()) fail(path + "/components", "components differ in truncation order");
    return phi;
}

std::string exponent_suffix(int e, bool latex)
{
    if (e == 1) return "";
    return latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
}

std::string latex_rational(const Rational& c)
{
    if (c.get_den() == 1) return c.get_num().get_str();
    return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
}

// Ascending total degree; lexicographically descending exponent inside a degree.
std::vector<const RSeries::Term*> display_order(const RSeries& s)
{
    std::vector<const RSeries::Term*> t;
    for (const auto& x : s.terms()) t.push_back(&x);
    std::stable_sort(t.begin(), t.end(), [](const RSeries::Term* a, const RSeries::Term* b) {
        int da = a->first.degree(), db = b->first.degree();
        if (da != db) return da < db;
        return b->first < a->first;
    });
    return t;
}

std::string format_series(const RSeries& s, const std::vector<std::string>& names, bool latex)
{
    if (static_cast<int>(names.size()) < s.nvars()) throw ShapeError("not enough variable names");
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto* t : display_order(s)) {
        Rational c = t->second;
        const bool neg = sgn(c) < 0;
        if (neg) c = -c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        std::vector<std::string> factors;
        for (int k = 0; k < s.nvars(); ++k) {
            int e = t->first[k];
            if (e == 0) continue;
            const std::string& v = names[static_cast<std::size_t>(k)];
            const bool wrap = latex && v.find('^') != std::string::npos && e != 1;
            factors.push_back((wrap ? "(" + v + ")" : v) + exponent_suffix(e, latex));
        }
        const bool unit = c == 1 && !factors.empty();
        if (latex) {
            if (!unit) os << latex_rational(c);
            for (const auto& f : factors) os << f;
        } else {
            bool star = false;
            if (!unit) {
                os << to_display_string(c);
                star = true;
            }
            for (const auto& f : factors) {
                if (star) os << '*';
                os << f;
                star = true;
            }
        }
    }
    return os.str();
}

} // namespace

Json to_json(const RSeries& s) { return series_json<Rational>(s, &rational_coeff); }
Json to_json(const PSeries& s) { return series_json<CoeffPoly>(s, &poly_coeff); }

Json label_json(const Indeterminate& x) { return Json::array({std::string(1, x.symbol), x.component, x.index}); }

Json to_json(const CoeffPoly& p)
{
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json mono = Json::array();
        for (const auto& [k, pow] : m) mono.push_back(Json::array({label_json(Indeterminate::from_key(k)), pow}));
        Json t;
        t["mono"] = std::move(mono);
        t["c"] = to_json_string(c);
        terms.push_back(std::move(t));
    }
    Json j;
    j["poly"] = std::move(terms);
    return j;
}

Json to_json(const RFormalMap& f)
{
    Json j;
    j["source_dim"] = f.source_dim;
    j["target_dim"] = f.target_dim;
    Json c = Json::array();
    for (const auto& s : f.comps) c.push_back(to_json(s));
    j["components"] = std::move(c);
    return j;
}

Json to_json(const GeneratorTuple& g)
{
    Json j;
    Json c = Json::array();
    for (const auto& s : g.gens) c.push_back(to_json(s));
    j["generators"] = std::move(c);
    return j;
}

Json to_json(const RBiField& phi) { return bifield_json(phi); }
Json to_json(const PBiField& phi) { return bifield_json(phi); }

Json to_json(const RTriField& phi)
{
    Json j;
    j["dim"] = phi.dim;
    j["block_vars"] = phi.block_vars;
    Json a = Json::array();
    for (int i = 0; i < phi.dim; ++i) {
        Json b = Json::array();
        for (int k = 0; k < phi.dim; ++k) {
            Json c = Json::array();
            for (int l = 0; l < phi.dim; ++l) c.push_back(to_json(phi.at(i, k, l)));
            b.push_back(std::move(c));
        }
        a.push_back(std::move(b));
    }
    j["components"] = std::move(a);
    return j;
}

Json to_json(const RBiVector& a)
{
    Json j;
    j["dim"] = a.dim;
    Json rows = Json::array();
    for (int i = 0; i < a.dim; ++i) {
        Json row = Json::array();
        for (int k = 0; k < a.dim; ++k) row.push_back(to_json(a.at(i, k)));
        rows.push_back(std::move(row));
    }
    j["components"] = std::move(rows);
    return j;
}

Json to_json(const IntegerMatrix& d)
{
    Json j;
    j["n"] = d.n;
    j["rows"] = d.rows;
    return j;
}

Json to_json(const std::vector<BracketEntry>& table)
{
    Json pairs = Json::array();
    for (const auto& e : table) {
        Json p;
        p["a"] = Json::array({e.a.component, e.a.index});
        p["b"] = Json::array({e.b.component, e.b.index});
        p["poly"] = to_json(e.poly);
        pairs.push_back(std::move(p));
    }
    Json j;
    j["pairs"] = std::move(pairs);
    return j;
}

RSeries series_from_json(const Json& j, const std::string& path)
{
    return series_read<Rational>(j, path, [](const Json& c, const std::string& p) { return rational_field(c, p); });
}

PSeries pseries_from_json(const Json& j, const std::string& path)
{
    return series_read<CoeffPoly>(j, path, [](const Json& c, const std::string& p) { return poly_from_json(c, p); });
}

Indeterminate label_from_json(const Json& j, const std::string& path)
{
    const Json& a = as_array(j, path);
    if (a.size() != 3 || !a[0].is_string() || a[0].get<std::string>().size() != 1) fail(path, "expected [symbol, component, index]");
    Indeterminate x;
    x.symbol = a[0].get<std::string>()[0];
    x.component = as_int(a[1], path + "/1");
    x.index = int_list(a[2], path + "/2");
    try {
        (void)x.key();
    } catch (const Error& e) {
        fail(path, e.what());
    }
    return x;
}

CoeffPoly poly_from_json(const Json& j, const std::string& path)
{
    const Json& terms = as_array(field(j, "poly", path), path + "/poly");
    std::vector<CoeffPoly::Term> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string p = path + "/poly/" + std::to_string(i);
        const Json& mono = as_array(field(terms[i], "mono", p), p + "/mono");
        Monomial m;
        for (std::size_t f = 0; f < mono.size(); ++f) {
            const std::string q = p + "/mono/" + std::to_string(f);
            const Json& pair = as_array(mono[f], q);
            if (pair.size() != 2) fail(q, "expected [label, power]");
            Indeterminate x = label_from_json(pair[0], q + "/0");
            int pow = as_int(pair[1], q + "/1");
            if (pow == 0) fail(q + "/1", "zero power");
            m.emplace_back(x.key(), pow);
        }
        out.emplace_back(std::move(m), rational_field(field(terms[i], "c", p), p + "/c"));
    }
    return CoeffPoly::from_terms(std::move(out));
}

RFormalMap map_from_json(const Json& j, const std::string& path)
{
    const int m = as_int(field(j, "source_dim", path), path + "/source_dim");
    const int n = as_int(field(j, "target_dim", path), path + "/target_dim");
    const Json& c = as_array(field(j, "components", path), path + "/components");
    if (static_cast<int>(c.size()) != n) fail(path + "/components", "component count differs from target_dim");
    RFormalMap f;
    f.source_dim = m;
    f.target_dim = n;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::string p = path + "/components/" + std::to_string(i);
        RSeries s = series_from_json(c[i], p);
        if (s.nvars() != m) fail(p, "component must have source_dim variables");
        if (!f.comps.empty() && s.max_degree() != f.comps.front().max_degree()) fail(p, "components differ in truncation order");
        f.comps.push_back(std::move(s));
    }
    return f;
}

GeneratorTuple generators_from_json(const Json& j, const std::string& path)
{
    const Json& c = as_array(field(j, "generators", path), path + "/generators");
    GeneratorTuple g;
    const int n = static_cast<int>(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::string p = path + "/generators/" + std::to_string(i);
        RSeries s = series_from_json(c[i], p);
        if (s.nvars() != n) fail(p, "generator must have one variable per generator");
        g.gens.push_back(std::move(s));
    }
    if (g.gens.empty()) fail(path + "/generators", "empty generator list");
    return g;
}

RBiField bifield_from_json(const Json& j, const std::string& path)
{
    return bifield_read<Rational>(j, path, [](const Json& s, const std::string& p) { return series_from_json(s, p); });
}

PBiField pbifield_from_json(const Json& j, const std::string& path)
{
    return bifield_read<CoeffPoly>(j, path, [](const Json& s, const std::string& p) { return pseries_from_json(s, p); });
}

RTriField trifield_from_json(const Json& j, const std::string& path)
{
    const int n = as_int(field(j, "dim", path), path + "/dim");
    const int m = j.contains("block_vars") ? as_int(j["block_vars"], path + "/block_vars") : n;
    const Json& a = as_array(field(j, "components", path), path + "/components");
    RTriField phi;
    phi.dim = n;
    phi.block_vars = m;
    if (static_cast<int>(a.size()) != n) fail(path + "/components", "size differs from dim");
    for (int i = 0; i < n; ++i) {
        const std::string p = path + "/components/" + std::to_string(i);
        const Json& b = as_array(a[static_cast<std::size_t>(i)], p);
        if (static_cast<int>(b.size()) != n) fail(p, "size differs from dim");
        for (int k = 0; k < n; ++k) {
            const std::string q = p + "/" + std::to_string(k);
            const Json& c = as_array(b[static_cast<std::size_t>(k)], q);
            if (static_cast<int>(c.size()) != n) fail(q, "size differs from dim");
            for (int l = 0; l < n; ++l) {
                const std::string r = q + "/" + std::to_string(l);
                RSeries s = series_from_json(c[static_cast<std::size_t>(l)], r);
                if (s.nvars() != 3 * m) fail(r, "component must have 3*block_vars variables");
                phi.comps.push_back(std::move(s));
            }
        }
    }
    return phi;
}

RBiVector bivector_from_json(const Json& j, const std::string& path)
{
    const int n = as_int(field(j, "dim", path), path + "/dim");
    const Json& rows = as_array(field(j, "components", path), path + "/components");
    if (static_cast<int>(rows.size()) != n) fail(path + "/components", "row count differs from dim");
    RBiVector a;
    a.dim = n;
    for (int i = 0; i < n; ++i) {
        const std::string p = path + "/components/" + std::to_string(i);
        const Json& row = as_array(rows[static_cast<std::size_t>(i)], p);
        if (static_cast<int>(row.size()) != n) fail(p, "column count differs from dim");
        for (int k = 0; k < n; ++k) {
            const std::string q = p + "/" + std::to_string(k);
            RSeries s = series_from_json(row[static_cast<std::size_t>(k)], q);
            if (s.nvars() != n) fail(q, "component must have dim variables");
            a.comps.push_back(std::move(s));
        }
    }
    return a;
}

IntegerMatrix matrix_from_json(const Json& j, const std::string& path)
{
    const int n = as_int(field(j, "n", path), path + "/n");
    const Json& rows = as_array(field(j, "rows", path), path + "/rows");
    if (n < 1 || static_cast<int>(rows.size()) != n) fail(path + "/rows", "row count differs from n");
    std::vector<std::vector<long long>> r;
    for (int i = 0; i < n; ++i) {
        const std::string p = path + "/rows/" + std::to_string(i);
        const Json& row = as_array(rows[static_cast<std::size_t>(i)], p);
        if (static_cast<int>(row.size()) != n) fail(p, "row length differs from n");
        std::vector<long long> v;
        for (std::size_t k = 0; k < row.size(); ++k) {
            long long x = as_long(row[k], p + "/" + std::to_string(k));
            if (x < -127 || x > 127) fail(p + "/" + std::to_string(k), "entry out of supported range");
            v.push_back(x);
        }
        r.push_back(std::move(v));
    }
    return IntegerMatrix(r);
}

std::vector<BracketEntry> brackets_from_json(const Json& j, const std::string& path)
{
    const Json& pairs = as_array(field(j, "pairs", path), path + "/pairs");
    std::vector<BracketEntry> out;
    auto label = [](const Json& x, const std::string& p) {
        const Json& a = as_array(x, p);
        if (a.size() != 2) fail(p, "expected [component, index]");
        return Indeterminate{'x', as_int(a[0], p + "/0"), int_list(a[1], p + "/1")};
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string p = path + "/pairs/" + std::to_string(i);
        out.push_back(BracketEntry{label(field(pairs[i], "a", p), p + "/a"), label(field(pairs[i], "b", p), p + "/b"),
                                   poly_from_json(field(pairs[i], "poly", p), p + "/poly")});
    }
    return out;
}

Json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": byte " + std::to_string(e.byte) + ": malformed JSON");
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

std::vector<std::string> variable_names(int block_vars, int nblocks, bool latex)
{
    static const char* blocks[] = {"u", "v", "w"};
    if (nblocks < 1 || nblocks > 3) throw ShapeError("between one and three variable blocks are supported");
    std::vector<std::string> names;
    for (int b = 0; b < nblocks; ++b)
        for (int k = 1; k <= block_vars; ++k) {
            if (block_vars == 1)
                names.emplace_back(blocks[b]);
            else if (latex)
                names.push_back(std::string(blocks[b]) + "^{" + std::to_string(k) + "}");
            else
                names.push_back(std::string(blocks[b]) + std::to_string(k));
        }
    return names;
}

std::string to_text(const RSeries& s, const std::vector<std::string>& names) { return format_series(s, names, false); }
std::string to_latex(const RSeries& s, const std::vector<std::string>& names) { return format_series(s, names, true); }

std::string label_to_text(const Indeterminate& x) { return indeterminate_name(x); }

std::string label_to_latex(const Indeterminate& x)
{
    std::string idx;
    bool digits = true;
    for (int v : x.index) digits = digits && v < 10;
    for (std::size_t i = 0; i < x.index.size(); ++i) {
        if (i && !digits) idx += ",";
        idx += std::to_string(x.index[i]);
    }
    std::string s(1, x.symbol);
    if (x.index.size() > 1) s += "^{" + std::to_string(x.component) + "}";
    return s + "_{" + idx + "}";
}

std::string poly_to_latex(const CoeffPoly& p)
{
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c0] : p.terms()) {
        Rational c = c0;
        const bool neg = sgn(c) < 0;
        if (neg) c = -c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        if (!(c == 1 && !m.empty())) os << latex_rational(c);
        for (const auto& [k, pow] : m) os << label_to_latex(Indeterminate::from_key(k)) << exponent_suffix(pow, true);
    }
    return os.str();
}

} // namespace fdiff
