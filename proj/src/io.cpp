#include "logpolar/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace logpolar::io {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    parse_error("not a number: '" + std::string(token) + "'");
  if (!std::isfinite(v)) parse_error("non-finite entry");
  return v;
}

std::vector<double> number_array(const Json& j, const char* key, std::size_t expected) {
  if (!j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  const Json& a = j.at(key);
  if (!a.is_array()) parse_error(std::string("field '") + key + "' must be an array");
  if (a.size() != expected)
    parse_error(std::string("field '") + key + "' has " + std::to_string(a.size()) + " entries, expected " +
                std::to_string(expected));
  std::vector<double> out;
  out.reserve(expected);
  for (const Json& v : a) {
    if (!v.is_number()) parse_error(std::string("field '") + key + "' holds a non-number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) parse_error("non-finite entry");
    out.push_back(d);
  }
  return out;
}

CMat parse_json_matrix(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) parse_error("matrix file must be a JSON object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer()) parse_error("field 'dim' must be an integer");
  const long long dim = j.at("dim").get<long long>();
  if (dim < 1 || dim > 1000) parse_error("field 'dim' out of range");
  const auto n = static_cast<Eigen::Index>(dim);
  const auto count = static_cast<std::size_t>(dim * dim);
  const std::vector<double> re = number_array(j, "real", count);
  std::vector<double> im(count, 0.0);
  if (j.contains("imag") && !j.at("imag").is_null()) im = number_array(j, "imag", count);
  CMat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto k = static_cast<std::size_t>(r * n + c);
      m(r, c) = Complex(re[k], im[k]);
    }
  return m;
}

CMat parse_csv_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::size_t p = 0;
    while (true) {
      const auto comma = line.find(',', p);
      row.push_back(parse_number(line.substr(p, comma == std::string_view::npos ? line.size() - p : comma - p)));
      if (comma == std::string_view::npos) break;
      p = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_error("empty matrix");
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != n)
      parse_error("CSV row " + std::to_string(r + 1) + " does not have " + std::to_string(n) + " entries");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

void dump_value(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + Json(key).dump() + (indent > 0 ? ": " : ":");
        dump_value(value, indent, depth + 1, out);
      }
      out += nl + close + "}";
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
      if (j.empty() || flat) {
        out += "[";
        bool first = true;
        for (const Json& v : j) {
          if (!first) out += indent > 0 ? ", " : ",";
          first = false;
          dump_value(v, indent, depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const Json& v : j) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        dump_value(v, indent, depth + 1, out);
      }
      out += nl + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out += prefix + ",";
    if (j.is_number_float())
      out += format_double(j.get<double>());
    else if (j.is_string())
      out += j.get<std::string>();
    else
      out += j.dump();
    out += "\n";
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CMat parse_matrix(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty()) parse_error("empty input");
  return body.front() == '{' ? parse_json_matrix(body) : parse_csv_matrix(body);
}

CMat read_matrix(const std::string& arg, Eigen::Index default_dim) {
  if (arg == "I") return CMat::Identity(default_dim, default_dim);
  if (arg.rfind("eye:", 0) == 0) {
    const double n = parse_number(std::string_view(arg).substr(4));
    if (n < 1 || n > 1000 || n != std::floor(n)) parse_error("bad identity size in '" + arg + "'");
    return CMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  }
  if (arg.rfind("diag:", 0) == 0) {
    std::vector<double> vals;
    std::string_view rest = std::string_view(arg).substr(5);
    std::size_t p = 0;
    while (true) {
      const auto comma = rest.find(',', p);
      vals.push_back(parse_number(rest.substr(p, comma == std::string_view::npos ? rest.size() - p : comma - p)));
      if (comma == std::string_view::npos) break;
      p = comma + 1;
    }
    CMat m = CMat::Zero(static_cast<Eigen::Index>(vals.size()), static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = vals[i];
    return m;
  }
  std::stringstream buffer;
  if (arg == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(arg, std::ios::binary);
    if (!in) parse_error("cannot open '" + arg + "'");
    buffer << in.rdbuf();
  }
  return parse_matrix(buffer.str());
}

Json matrix_json(const CMat& m) {
  require_square(m.rows(), m.cols(), "matrix_json");
  Json j;
  j["dim"] = m.rows();
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["real"] = std::move(re);
  if (!is_real(m)) j["imag"] = std::move(im);
  return j;
}

std::string write_matrix(const CMat& m) { return dump_json(matrix_json(m)) + "\n"; }

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_value(j, indent, 0, out);
  return out;
}

std::string dump_csv(const Json& j) {
  std::string out = "key,value\n";
  flatten(j, "", out);
  return out;
}

}  // namespace logpolar::io
