#ifndef FDIFF_IO_HPP
#define FDIFF_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "fdiff/classify.hpp"
#include "fdiff/grouppoisson.hpp"
#include "fdiff/homspace.hpp"

namespace fdiff {

using Json = nlohmann::ordered_json;

Json to_json(const RSeries& s);
Json to_json(const PSeries& s);
Json to_json(const CoeffPoly& p);
Json to_json(const RFormalMap& f);
Json to_json(const GeneratorTuple& g);
Json to_json(const RBiField& phi);
Json to_json(const PBiField& phi);
Json to_json(const RTriField& phi);
Json to_json(const RBiVector& a);
Json to_json(const IntegerMatrix& d);
Json to_json(const std::vector<BracketEntry>& table);
Json label_json(const Indeterminate& x);

// Readers report the offending location as a JSON pointer in ParseError.
RSeries series_from_json(const Json& j, const std::string& path = "");
PSeries pseries_from_json(const Json& j, const std::string& path = "");
CoeffPoly poly_from_json(const Json& j, const std::string& path = "");
RFormalMap map_from_json(const Json& j, const std::string& path = "");
GeneratorTuple generators_from_json(const Json& j, const std::string& path = "");
RBiField bifield_from_json(const Json& j, const std::string& path = "");
PBiField pbifield_from_json(const Json& j, const std::string& path = "");
RTriField trifield_from_json(const Json& j, const std::string& path = "");
RBiVector bivector_from_json(const Json& j, const std::string& path = "");
IntegerMatrix matrix_from_json(const Json& j, const std::string& path = "");
std::vector<BracketEntry> brackets_from_json(const Json& j, const std::string& path = "");
Indeterminate label_from_json(const Json& j, const std::string& path = "");

Json parse_json_text(const std::string& text, const std::string& source = "input");
Json read_json_file(const std::string& path);

// Variable names for a series on nblocks blocks of block_vars variables each
// (u, v, w for the blocks; superscript component when block_vars > 1).
std::vector<std::string> variable_names(int block_vars, int nblocks, bool latex);

std::string to_text(const RSeries& s, const std::vector<std::string>& names);
std::string to_latex(const RSeries& s, const std::vector<std::string>& names);
std::string poly_to_latex(const CoeffPoly& p);
std::string label_to_latex(const Indeterminate& x);
std::string label_to_text(const Indeterminate& x);

} // namespace fdiff

#endif
