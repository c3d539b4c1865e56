#pragma once

#include <string>

#include "json.hpp"
#include "rav/criterion.hpp"
#include "rav/errors.hpp"
#include "rav/search.hpp"
#include "rav/siegel.hpp"
#include "rav/subvariety.hpp"

namespace rav {

using json = nlohmann::ordered_json;

// Scalars: rationals as canonical strings "p" / "p/q"; quadratic elements as
// {"a": "p/q", "b": "p/q", "d": n} with b != 0. Matrices are row-major nested
// arrays. Parsers throw ParseError on malformed input.
json qscalar_to_json(const QScalar& x);
QScalar json_to_qscalar(const json& j);

json exact_to_json(const ExactMatrix& m);
ExactMatrix json_to_exact(const json& j);

json float_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd json_to_float_matrix(const json& j);

// {"g", "mode": "exact"|"float", "X", "Y"}
json siegel_to_json(const SiegelPoint& z);
SiegelPoint json_to_siegel(const json& j);

// {"g", "mode", "J"}
json jmat_to_json(const ComplexStructure& j);

// {"n", "r", "B"} with exact B in canonical form.
json plane_to_json(const RationalPlane& p);
RationalPlane json_to_plane(const json& j);

// {"n", "r", "B"} with orthonormal float B.
json real_plane_to_json(const RealPlane& p);
RealPlane json_to_real_plane(const json& j);

// {"g", "m", "q"} with q[i][j] a length-m array of scalars.
json qtensor_to_json(const QTensor& t);
QTensor json_to_qtensor(const json& j);

json certificate_to_json(const SubvarietyCertificate& c);

json config_to_json(const Config& c);
// Updates only the keys present in j; unknown keys are ParseError.
void json_update_config(const json& j, Config& c);

json witness_to_json(const DensityWitness& w);
json report_to_json(const CertifyReport& r);
json fermat_to_json(const FermatReport& r);

json sample_table_to_json(const SampleTable& t);
// Long-form rows (index,seed,eps,success,residual,displacement,planes_tried),
// a blank line, then the per-eps summary table. Doubles printed with %.17g.
std::string sample_table_csv(const SampleTable& t);

json error_to_json(const DomainError& e);

// Reads a JSON document from a file, or from stdin when path is "-".
// ParseError on unreadable files or malformed JSON.
json load_json_file(const std::string& path);

}  // namespace rav
