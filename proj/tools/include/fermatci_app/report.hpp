#ifndef FERMATCI_APP_REPORT_HPP
#define FERMATCI_APP_REPORT_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "fermatci/fermat_ci.hpp"
#include "fermatci_app/runner.hpp"

namespace fermatci::app {

enum class Format { Text, Json };

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json big_json(const boost::multiprecision::cpp_int& v);
/// "a/b", or "a" when the denominator is 1.
std::string rational_string(const boost::multiprecision::cpp_rational& v);

Json field_json(const FieldRegistry& reg, FieldId id);
/// Entries formatted over `field`; larger than cap x cap is summarized by rank.
Json matrix_json(const FieldRegistry& reg, FieldId field, const RatMatrix& m, std::size_t cap = 6);

/// Two-space indented JSON with a trailing newline.
std::string render_json(const Json& j);
/// Indented "key: value" lines covering the same content.
std::string render_text(const Json& j);
std::string render(const Json& j, Format format);

}  // namespace fermatci::app

#endif  // FERMATCI_APP_REPORT_HPP
