#pragma once

#include <string>

#include "json.hpp"

#include "descent/cone_monoid.hpp"
#include "descent/delta_machine.hpp"
#include "descent/geometry.hpp"
#include "descent/hochschild.hpp"
#include "descent/lambda_ring.hpp"

namespace descent {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

Rational json_rational(const Json& j);
Integer json_integer(const Json& j);
QVector json_qvector(const Json& j);
ZVector json_zvector(const Json& j);
// list of vectors, or an object holding one under the given key
std::vector<ZVector> json_zvectors(const Json& j, const std::string& key);

Json to_json(const Rational& q);
Json to_json(const Integer& z);
Json to_json(const QVector& v);
Json to_json(const ZVector& v);
Json to_json(const Point& p);

Polytope load_polytope(const Json& j);
Json polytope_json(const Polytope& p);
Json cone_json(const Cone& c);

InstanceSpec load_instance(const Json& j);
Json instance_spec_json(const InstanceSpec& s);
Json instance_json(const DescentInstance& inst);
Json exceptional_json(const ExceptionalResult& r);

Json monomial_json(const BasisMonomial& b);
BasisMonomial load_monomial(const Json& j, const DescentInstance& inst);
Chain load_chain(const Json& j, const DescentInstance& inst);
Json chain_json(const Chain& c);

MachineState load_state(const Json& j);
Json state_json(const MachineState& s);
Json trace_json(const MachineTrace& t);
Json worst_case_json(const WorstCase& w);
Json sublemma_json(const SublemmaResult& r);

Json descent_record_json(const DescentStepRecord& r);
Json descent_run_json(const DescentRun& r);

}  // namespace descent
