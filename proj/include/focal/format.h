#ifndef FOCAL_FORMAT_H_
#define FOCAL_FORMAT_H_

#include <string>
#include <string_view>

namespace focal {

// Integral values print without a decimal point ("10"), others in shortest
// round-trip form ("2.5").
std::string FormatNumber(double value);

// Fixed-point with `digits` decimals, used for report tables.
std::string FormatFixed(double value, int digits);

std::string ToLower(std::string_view text);
std::string_view Trim(std::string_view text);

// Contents of the last <answer>...</answer> span, if any.
bool LastAnswerSpan(std::string_view text, std::string_view* inner);

}  // namespace focal

#endif  // FOCAL_FORMAT_H_
