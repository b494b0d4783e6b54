#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fdiff/homspace.hpp"
#include "fdiff/io.hpp"
#include "fdiff/verify.hpp"

using namespace fdiff;

namespace {

enum class Format { Text, Json, Latex };

struct Job {
    int order = 8;
    std::uint64_t seed = 42;
    std::string format = "text";
    std::string normalize = "raw";
    std::string out;

    Format fmt() const
    {
        if (format == "json") return Format::Json;
        if (format == "latex") return Format::Latex;
        return Format::Text;
    }
    Normalization norm() const { return parse_normalization(normalize); }
};

// Output collected for stdout, plus an artifact that goes to --out when given.
struct Emission {
    std::string report;
    std::string artifact;
};

Json load_doc(const std::string& arg)
{
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json_text(arg, "argument");
    return read_json_file(arg);
}

IntegerMatrix load_matrix(const std::string& arg)
{
    Json j = load_doc(arg);
    if (j.is_array()) {
        Json w;
        w["n"] = j.size();
        w["rows"] = j;
        return matrix_from_json(w);
    }
    return matrix_from_json(j);
}

std::string idx(std::initializer_list<int> k)
{
    std::string s;
    for (int v : k) s += std::to_string(v + 1);
    return s;
}

std::string series_str(const RSeries& s, int block_vars, int blocks, Format f)
{
    const auto names = variable_names(block_vars, blocks, f == Format::Latex);
    return f == Format::Latex ? to_latex(s, names) : to_text(s, names);
}

std::string degree_line(int d, Format f)
{
    return (f == Format::Latex ? "% certified degree " : "certified degree ") + std::to_string(d) + "\n";
}

std::string emit_bifield(const RBiField& phi, Format f)
{
    if (f == Format::Json) {
        Json j = to_json(phi);
        j["certified_degree"] = phi.certified_degree();
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    const std::string args = f == Format::Latex ? "(u,v)" : "(u,v)";
    for (int i = 0; i < phi.dim; ++i)
        for (int j = 0; j < phi.dim; ++j) {
            const std::string body = series_str(phi.at(i, j), phi.block_vars, 2, f);
            if (phi.dim == 1)
                os << body << '\n';
            else if (f == Format::Latex)
                os << "\\varphi^{" << idx({i, j}) << "}" << args << " = " << body << '\n';
            else
                os << "phi^" << idx({i, j}) << args << " = " << body << '\n';
        }
    os << degree_line(phi.certified_degree(), f);
    return os.str();
}

std::string emit_trifield(const RTriField& phi, Format f)
{
    if (f == Format::Json) return to_json(phi).dump(2) + "\n";
    std::ostringstream os;
    for (int i = 0; i < phi.dim; ++i)
        for (int j = 0; j < phi.dim; ++j)
            for (int k = 0; k < phi.dim; ++k) {
                const auto& s = phi.at(i, j, k);
                if (s.is_zero()) continue;
                const std::string body = series_str(s, phi.block_vars, 3, f);
                if (f == Format::Latex)
                    os << "\\Phi^{" << idx({i, j, k}) << "}(u,v,w) = " << body << '\n';
                else
                    os << "Phi^" << idx({i, j, k}) << "(u,v,w) = " << body << '\n';
            }
    return os.str();
}

std::string emit_bivector(const RBiVector& a, Format f)
{
    if (f == Format::Json) {
        Json j = to_json(a);
        j["certified_degree"] = a.certified_degree();
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    for (int i = 0; i < a.dim; ++i)
        for (int j = i + 1; j < a.dim; ++j) {
            const std::string body = series_str(a.at(i, j), a.dim, 1, f);
            if (f == Format::Latex)
                os << "\\{u^{" << i + 1 << "},u^{" << j + 1 << "}\\} = " << body << '\n';
            else
                os << "{u" << i + 1 << ",u" << j + 1 << "} = " << body << '\n';
        }
    os << degree_line(a.certified_degree(), f);
    return os.str();
}

std::string emit_generators(const GeneratorTuple& g, Format f)
{
    if (f == Format::Json) return to_json(g).dump(2) + "\n";
    std::ostringstream os;
    for (int i = 0; i < g.dim(); ++i) {
        const std::string body = series_str(g[i], g.dim(), 1, f);
        os << (f == Format::Latex ? "F^{" + std::to_string(i + 1) + "}(u) = " : "F" + std::to_string(i + 1) + "(u) = ")
           << body << '\n';
    }
    return os.str();
}

Json residual_json(const RTriField& r)
{
    Json j;
    j["zero"] = r.is_zero();
    j["certified_degree"] = r.certified_degree();
    j["residual"] = to_json(r);
    return j;
}

std::string residual_summary(const RTriField& r, Format f)
{
    if (r.is_zero()) return (f == Format::Latex ? "% " : "") + std::string("residual 0 up to degree ") +
                            std::to_string(r.certified_degree()) + "\n";
    return emit_trifield(r, f) + degree_line(r.certified_degree(), f);
}

RBiField phi_from_inputs(const Job& job, const std::string& phi_path, const std::string& gens_path,
                         const std::string& matrix_arg)
{
    const int given = !phi_path.empty() + !gens_path.empty() + !matrix_arg.empty();
    if (given != 1) throw PreconditionError("give exactly one of --phi, --generators, --matrix");
    if (!phi_path.empty()) return bifield_from_json(read_json_file(phi_path));
    if (!gens_path.empty()) return rmatrix_from_generators(generators_from_json(read_json_file(gens_path)));
    return canonical_rmatrix(load_matrix(matrix_arg), job.norm(), job.order);
}

void write_out(const std::string& path, const std::string& text)
{
    std::ofstream o(path);
    if (!o) throw ParseError(path + ": cannot open for writing");
    o << text;
}

int finish(const Job& job, const Emission& e, int status)
{
    if (!job.out.empty() && !e.artifact.empty()) {
        write_out(job.out, e.artifact);
        std::cout << e.report;
        if (e.report.empty()) std::cout << "wrote " << job.out << '\n';
    } else {
        std::cout << e.artifact << e.report;
    }
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact r-matrices and Poisson-Lie structures on groups of formal diffeomorphisms"};
    app.require_subcommand(1);
    app.fallthrough();
    Job job;
    app.add_option("--order", job.order, "truncation order N")->check(CLI::PositiveNumber);
    app.add_option("--seed", job.seed, "seed for sampled objects");
    app.add_option("--format", job.format, "output format")->check(CLI::IsMember({"text", "json", "latex"}));
    app.add_option("--normalize", job.normalize, "normalization of canonical r-matrices")
        ->check(CLI::IsMember({"raw", "appendix"}));
    app.add_option("--out", job.out, "write the artifact to this path");

    std::string phi_path, gens_path, matrix_arg, map_path, phi_m_path, phi_n_path;
    int bound = 3, d = 1, budget = 6;
    bool with_constant = false;
    std::vector<std::string> suites;

    auto* rmatrix = app.add_subcommand("rmatrix", "r-matrix from generators or an integer matrix D");
    rmatrix->add_option("--generators", gens_path, "generator tuple JSON")->check(CLI::ExistingFile);
    rmatrix->add_option("--matrix", matrix_arg, "D matrix: JSON file or inline JSON");

    auto* cybe = app.add_subcommand("cybe-check", "CYBE residual certificate");
    cybe->add_option("--phi", phi_path, "bifield JSON")->check(CLI::ExistingFile);
    cybe->add_option("--generators", gens_path, "generator tuple JSON")->check(CLI::ExistingFile);
    cybe->add_option("--matrix", matrix_arg, "D matrix: JSON file or inline JSON");

    auto* brackets = app.add_subcommand("brackets", "bracket table of jet coordinates");
    brackets->add_option("--phi", phi_path, "bifield JSON")->check(CLI::ExistingFile);
    brackets->add_option("--generators", gens_path, "generator tuple JSON")->check(CLI::ExistingFile);
    brackets->add_option("--matrix", matrix_arg, "D matrix: JSON file or inline JSON");
    brackets->add_option("--bound", bound, "largest index degree")->check(CLI::PositiveNumber);
    brackets->add_flag("--constant", with_constant, "include the constant jets x^i_0");

    auto* alpha = app.add_subcommand("alpha", "induced Poisson bivector on R^n");
    alpha->add_option("--phi", phi_path, "bifield JSON")->check(CLI::ExistingFile);
    alpha->add_option("--generators", gens_path, "generator tuple JSON")->check(CLI::ExistingFile);
    alpha->add_option("--matrix", matrix_arg, "D matrix: JSON file or inline JSON");

    auto* jetpi = app.add_subcommand("jet-pi", "Poisson tensor on the jet space at a map F");
    jetpi->add_option("--map", map_path, "formal map JSON")->required()->check(CLI::ExistingFile);
    jetpi->add_option("--phi-source", phi_m_path, "source r-matrix JSON")->required()->check(CLI::ExistingFile);
    jetpi->add_option("--phi-target", phi_n_path, "target r-matrix JSON")->required()->check(CLI::ExistingFile);

    auto* canonical = app.add_subcommand("canonical", "generators, r-matrix and alpha for D");
    canonical->add_option("--matrix", matrix_arg, "D matrix: JSON file or inline JSON")->required();

    auto* w1 = app.add_subcommand("w1", "canonical r-matrix on the line");
    w1->add_option("--d", d, "orbit label, d >= -1")->required();

    auto* sample = app.add_subcommand("sample", "seeded member of the Laurent family of D");
    sample->add_option("--matrix", matrix_arg, "D matrix: JSON file or inline JSON")->required();
    sample->add_option("--budget", budget, "size budget (total degree)");

    auto* verify = app.add_subcommand("verify", "invariant suites or the checks of one r-matrix");
    verify->add_option("--suite", suites, "all or suite names")->delimiter(',');
    verify->add_option("--phi", phi_path, "check this r-matrix instead")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        const Format f = job.fmt();
        Emission e;
        int status = 0;
        if (*rmatrix) {
            RBiField phi = phi_from_inputs(job, "", gens_path, matrix_arg);
            e.artifact = emit_bifield(phi, f);
        } else if (*cybe) {
            RBiField phi = phi_from_inputs(job, phi_path, gens_path, matrix_arg);
            RTriField r = cybe_residual(phi);
            status = r.is_zero() ? 0 : 1;
            e.report = f == Format::Json ? residual_json(r).dump(2) + "\n" : residual_summary(r, f);
        } else if (*brackets) {
            RBiField phi = phi_from_inputs(job, phi_path, gens_path, matrix_arg);
            auto om = omega_bifield(phi, SymbolicJet::make(phi.dim, with_constant, 2 * bound));
            auto table = bracket_table(om, bound, with_constant);
            if (f == Format::Json) {
                e.artifact = to_json(table).dump(2) + "\n";
            } else {
                std::ostringstream os;
                for (const auto& b : table) {
                    if (f == Format::Latex)
                        os << "\\{" << label_to_latex(b.a) << "," << label_to_latex(b.b) << "\\} = " << poly_to_latex(b.poly) << '\n';
                    else
                        os << "{" << label_to_text(b.a) << "," << label_to_text(b.b) << "} = " << b.poly.to_string() << '\n';
                }
                os << degree_line(2 * bound, f);
                e.artifact = os.str();
            }
        } else if (*alpha) {
            RBiField phi = phi_from_inputs(job, phi_path, gens_path, matrix_arg);
            RBiVector a = induced_alpha(phi);
            const bool jacobi = detail::all_zero(alpha_jacobi_residual(a));
            status = jacobi ? 0 : 1;
            e.artifact = emit_bivector(a, f);
            e.report = std::string(f == Format::Latex ? "% " : "") + (jacobi ? "jacobi residual 0\n" : "jacobi residual nonzero\n");
            if (f == Format::Json) e.report.clear();
        } else if (*jetpi) {
            RFormalMap fm = map_from_json(read_json_file(map_path));
            RBiField pm = bifield_from_json(read_json_file(phi_m_path));
            RBiField pn = bifield_from_json(read_json_file(phi_n_path));
            e.artifact = emit_bifield(jet_pi(fm, pm, pn), f);
        } else if (*canonical) {
            IntegerMatrix dm = load_matrix(matrix_arg);
            GeneratorTuple g = canonical_generators(dm, job.order);
            RBiField phi = canonical_rmatrix(dm, job.norm(), job.order);
            RBiVector a = induced_alpha(phi);
            if (f == Format::Json) {
                Json j;
                j["matrix"] = to_json(dm);
                j["normalization"] = to_string(job.norm());
                j["generators"] = to_json(g);
                j["phi"] = to_json(phi);
                j["alpha"] = to_json(a);
                j["certified_degree"] = phi.certified_degree();
                e.artifact = j.dump(2) + "\n";
            } else {
                e.artifact = emit_generators(g, f) + emit_bifield(phi, f) + emit_bivector(a, f);
            }
        } else if (*w1) {
            e.artifact = emit_bifield(w1_canonical(d, job.order), f);
        } else if (*sample) {
            IntegerMatrix dm = load_matrix(matrix_arg);
            LaurentSample s = laurent_family_sample(dm, job.seed, budget);
            RTriField r = cybe_residual(s.phi);
            status = r.is_zero() ? 0 : 1;
            if (f == Format::Json) {
                Json j;
                j["matrix"] = to_json(dm);
                j["seed"] = job.seed;
                j["generators"] = to_json(s.generators);
                j["phi"] = to_json(s.phi);
                j["certificate"] = residual_json(r);
                e.artifact = j.dump(2) + "\n";
            } else {
                e.artifact = emit_generators(s.generators, f) + emit_bifield(s.phi, f);
                e.report = residual_summary(r, f);
            }
        } else if (*verify) {
            VerifyReport r;
            if (!phi_path.empty())
                r = verify_rmatrix(bifield_from_json(read_json_file(phi_path)));
            else
                r = verify_suite(suites.empty() ? std::vector<std::string>{"all"} : suites, job.seed);
            status = r.passed() ? 0 : 1;
            e.report = f == Format::Json ? to_json(r).dump(2) + "\n" : to_text(r);
        }
        return finish(job, e, status);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
}
