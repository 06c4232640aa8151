#include "fermatci_app/report.hpp"

#include <limits>
#include <sstream>

#include "fermatci/linalg.hpp"

namespace fermatci::app {

Json big_json(const boost::multiprecision::cpp_int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(v.str());
}

std::string rational_string(const boost::multiprecision::cpp_rational& v) {
  auto num = boost::multiprecision::numerator(v);
  auto den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Json field_json(const FieldRegistry& reg, FieldId id) {
  const TowerField& f = reg.field(id);
  Json j;
  j["id"] = id;
  j["kind"] = to_string(f.kind());
  j["gens"] = f.gens();
  if (f.parent()) {
    j["parent"] = f.parent()->parent;
    Json images = Json::object();
    const TowerField& parent = reg.field(f.parent()->parent);
    for (std::size_t i = 0; i < parent.gen_count(); ++i) {
      const RatFunc& img = f.parent()->images[i];
      if (img.as_variable() == i && parent.gens()[i] == f.gens()[i]) continue;
      images[parent.gens()[i]] = f.format(img);
    }
    j["embedding"] = images;
  }
  j["degree_log"] = f.degree_log();
  return j;
}

Json matrix_json(const FieldRegistry& reg, FieldId field, const RatMatrix& m, std::size_t cap) {
  const TowerField& f = reg.field(field);
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  if (m.size() > cap || cols > cap) {
    Json j;
    j["rows"] = m.size();
    j["cols"] = cols;
    j["rank"] = rank_over_field(m);
    return j;
  }
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const RatFunc& x : row) r.push_back(f.format(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

namespace {

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

bool flat_array(const Json& j) {
  for (const auto& x : j) {
    if (x.is_structured()) return false;
  }
  return true;
}

std::string inline_array(const Json& j) {
  std::string out = "[";
  bool first = true;
  for (const auto& x : j) {
    if (!first) out += ", ";
    first = false;
    out += x.is_array() ? inline_array(x) : scalar(x);
  }
  return out + "]";
}

void text(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() && !value.empty()) {
        os << pad << key << ":\n";
        text(os, value, indent + 1);
      } else if (value.is_array() && !flat_array(value)) {
        os << pad << key << ":\n";
        text(os, value, indent + 1);
      } else if (value.is_array()) {
        os << pad << key << ": " << inline_array(value) << "\n";
      } else if (value.is_object()) {
        os << pad << key << ": {}\n";
      } else {
        os << pad << key << ": " << scalar(value) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (x.is_object()) {
        os << pad << "-\n";
        text(os, x, indent + 1);
      } else if (x.is_array()) {
        os << pad << "- " << inline_array(x) << "\n";
      } else {
        os << pad << "- " << scalar(x) << "\n";
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream os;
  text(os, j, 0);
  return os.str();
}

std::string render(const Json& j, Format format) {
  return format == Format::Json ? render_json(j) : render_text(j);
}

}  // namespace fermatci::app
