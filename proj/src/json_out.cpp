#include "wavesym/json_out.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "wavesym/mesh.hpp"

namespace wavesym {

namespace {

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void emit(std::ostream& os, const nlohmann::json& v, int depth) {
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      // nlohmann's default object is an std::map, so iteration is sorted.
      os << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        indent(os, depth + 1);
        os << nlohmann::json(it.key()).dump() << ": ";
        emit(os, it.value(), depth + 1);
      }
      os << "\n";
      indent(os, depth);
      os << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) os << ",\n";
        indent(os, depth + 1);
        emit(os, v[i], depth + 1);
      }
      os << "\n";
      indent(os, depth);
      os << "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      os << (std::isfinite(d) ? format_double(d) : std::string("null"));
      return;
    }
    default:
      os << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::json& value) {
  emit(os, value, 0);
  os << "\n";
}

std::string to_json_text(const nlohmann::json& value) {
  std::ostringstream os;
  write_json(os, value);
  return os.str();
}

}  // namespace wavesym
