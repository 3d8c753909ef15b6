#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "localinv/contraction.hpp"
#include "localinv/invariant_span.hpp"
#include "localinv/series.hpp"

namespace localinv {

using Json = nlohmann::ordered_json;

/// Version tag written into every report as "schema_version".
inline constexpr const char* kSchemaVersion = "1.0";

/// Malformed input; the message starts with "<source>: <field path>".
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Json read_json_file(const std::string& path);
/// Parses text starting with '{' or '[' directly, otherwise reads a file.
Json read_json_arg(const std::string& text_or_path);

// {"M":[1,1,2],"sigma":["(1 2)(3)","(1)(2 3)"]}
Json to_json(const TraceMonomial& t);
TraceMonomial monomial_from_json(const Json& j, const std::string& where = "monomial");

// {"dims":[2,2],"entries":[["1/2","0",...],...]}
Json to_json(const Endomorphism& a);
Endomorphism endomorphism_from_json(const Json& j, const std::string& where = "endomorphism");

// {"factors":[[["1","0"],["0","1"]], ...]}
Json to_json(const SimpleEndo& s);
SimpleEndo simple_endo_from_json(const Json& j, const std::string& where = "simple endomorphism");

/// An input file: a list whose items are all Endomorphism objects or all
/// SimpleEndo objects (also accepted bare, as a one-element tuple).
struct EndoInput {
    EndoTuple tuple;
    /// Set when every item was given as factors.
    std::vector<SimpleEndo> simple;
    bool all_simple = false;
};

EndoInput endo_input_from_json(const Json& j, const std::string& where = "endomorphisms");

Json to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j, const std::string& where);

// {"N":…,"coeffs":["1","1","2",…]}
Json to_json(const PowerSeries& s);
// {"num":[…],"den":[…]}, constant term first
Json to_json(const RationalFunction& f);
Json to_json(const Reconstruction& r);
Json to_json(const PoleCheck& p);
Json to_json(const BoundReport& b);
Json to_json(const EmpiricalBound& e);
Json to_json(const GenerationReport& r);
Json to_json(const ContractionPlan& p);

}  // namespace localinv
