#pragma once

#include "muntz/basis.hpp"
#include "muntz/core.hpp"
#include "muntz/error.hpp"
#include "muntz/fourier.hpp"
#include "muntz/weil.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace muntz {

/// File could not be read, parsed or written.
class IoError : public Error {
public:
    using Error::Error;
};

using Json = nlohmann::ordered_json;

/// {"rule", "params", "N", "exponents"}; the explicit list is always emitted.
Json to_json(const ExponentSequence& seq);
/// Rule-based documents are regenerated from their parameters; "exponents" is then ignored.
ExponentSequence exponent_sequence_from_json(const Json& j);

/// {"a0", "harmonics": [[a1,b1], ...]}
Json to_json(const TrigPolynomial& p);
TrigPolynomial trig_polynomial_from_json(const Json& j);

/// {"rule":"power","r","beta","K","scale"} | {"rule":"inverse-log","beta","K"}
/// | {"rule":"table","values","beta","tail":"none"|"zero"|"power","tail_r"}
Json to_json(const PsiWeight& psi);
PsiWeight psi_weight_from_json(const Json& j);

/// {"terms": [[exponent, coefficient], ...]}
Json to_json(const MuntzPolynomial& p);
MuntzPolynomial muntz_polynomial_from_json(const Json& j);

/// {"rows": [trig polynomial, ...], "lead", "high"}; lead/high are recomputed on load and
/// must agree with the stored values.
Json to_json(const StepSystem& S);
StepSystem step_system_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& body);

/// Shortest round-trip decimal ("%.17g" style), '.' separator regardless of locale.
std::string format_real(double x);

/// Comma-separated table with a header line.
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace muntz
