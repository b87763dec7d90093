#pragma once

// Inequality report rows, CSV/JSON emission and regression snapshots.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lwlab {

enum class Status { pass, fail, report, drift, error };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::report: return "report";
    case Status::drift: return "drift";
    case Status::error: return "error";
  }
  return "error";
}

inline Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "report") return Status::report;
  if (s == "drift") return Status::drift;
  if (s == "error") return Status::error;
  throw std::invalid_argument("unknown status: " + s);
}

/// One checked inequality lhs <= rhs; margin = rhs - lhs.
struct InequalityReport {
  std::string check_id;
  std::string body_id;
  int dim = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double margin = 0.0;
  double uncertainty = 0.0;
  Status status = Status::report;
  std::string witness;

  bool failed() const { return status == Status::fail || status == Status::drift || status == Status::error; }
};

inline constexpr double kReportTol = 1e-9;

/// Assertable row: pass iff margin >= -tol * max(1, |lhs|, |rhs|) - uncertainty.
inline InequalityReport make_check(std::string check_id, std::string body_id, int dim, double lhs, double rhs,
                                   double constant, double uncertainty = 0.0, std::string witness = {},
                                   double tol = kReportTol) {
  InequalityReport r{std::move(check_id), std::move(body_id), dim, lhs, rhs, constant, rhs - lhs, uncertainty,
                     Status::pass, std::move(witness)};
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  const bool finite = std::isfinite(lhs) && std::isfinite(rhs) && std::isfinite(uncertainty);
  r.status = (finite && r.margin >= -tol * scale - uncertainty) ? Status::pass : Status::fail;
  return r;
}

/// Report-only row; fails only if a value is non-finite or non-positive.
inline InequalityReport make_record(std::string check_id, std::string body_id, int dim, double lhs, double rhs,
                                    double constant, double uncertainty = 0.0, std::string witness = {}) {
  InequalityReport r{std::move(check_id), std::move(body_id), dim, lhs, rhs, constant, rhs - lhs, uncertainty,
                     Status::report, std::move(witness)};
  const bool ok = std::isfinite(lhs) && std::isfinite(rhs) && lhs > 0.0 && rhs > 0.0;
  if (!ok) r.status = Status::fail;
  return r;
}

inline InequalityReport make_error(std::string check_id, std::string body_id, int dim, const std::string& what) {
  InequalityReport r;
  r.check_id = std::move(check_id);
  r.body_id = std::move(body_id);
  r.dim = dim;
  r.lhs = r.rhs = r.constant = r.margin = std::nan("");
  r.status = Status::error;
  r.witness = what;
  return r;
}

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_vector(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_number(v[i]);
  }
  return s;
}

namespace detail {

// Quoted field; newlines become spaces so every row stays on one line.
inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

inline std::string csv_field(const std::string& s) {
  return s.find_first_of(",\"\n\r") == std::string::npos ? s : csv_quote(s);
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_number(const std::string& s) {
  if (s == "nan" || s == "-nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return std::stod(s);
}

}  // namespace detail

inline constexpr const char* kCsvHeader = "check_id,body_id,dim,lhs,rhs,constant,margin,uncertainty,status,witness";

inline std::string to_csv(const std::vector<InequalityReport>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += detail::csv_field(r.check_id) + ',' + detail::csv_field(r.body_id) + ',' + std::to_string(r.dim) + ',' + format_number(r.lhs) + ',' +
           format_number(r.rhs) + ',' + format_number(r.constant) + ',' + format_number(r.margin) + ',' +
           format_number(r.uncertainty) + ',' + to_string(r.status) + ',' + detail::csv_quote(r.witness) + '\n';
  }
  return out;
}

inline std::vector<InequalityReport> from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<InequalityReport> rows;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("report CSV: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::csv_split(line);
    if (f.size() != 10) throw std::runtime_error("report CSV: expected 10 fields");
    InequalityReport r;
    r.check_id = f[0];
    r.body_id = f[1];
    r.dim = std::stoi(f[2]);
    r.lhs = detail::parse_number(f[3]);
    r.rhs = detail::parse_number(f[4]);
    r.constant = detail::parse_number(f[5]);
    r.margin = detail::parse_number(f[6]);
    r.uncertainty = detail::parse_number(f[7]);
    r.status = status_from_string(f[8]);
    r.witness = f[9];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline nlohmann::json to_json(const std::vector<InequalityReport>& rows) {
  auto num = [](double x) -> nlohmann::json { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"check_id", r.check_id},
                   {"body_id", r.body_id},
                   {"dim", r.dim},
                   {"lhs", num(r.lhs)},
                   {"rhs", num(r.rhs)},
                   {"constant", num(r.constant)},
                   {"margin", num(r.margin)},
                   {"uncertainty", num(r.uncertainty)},
                   {"status", to_string(r.status)},
                   {"witness", r.witness}});
  }
  return arr;
}

inline std::vector<InequalityReport> from_json(const nlohmann::json& arr) {
  auto num = [](const nlohmann::json& j) { return j.is_null() ? std::nan("") : j.get<double>(); };
  std::vector<InequalityReport> rows;
  for (const auto& j : arr) {
    InequalityReport r;
    r.check_id = j.at("check_id").get<std::string>();
    r.body_id = j.at("body_id").get<std::string>();
    r.dim = j.at("dim").get<int>();
    r.lhs = num(j.at("lhs"));
    r.rhs = num(j.at("rhs"));
    r.constant = num(j.at("constant"));
    r.margin = num(j.at("margin"));
    r.uncertainty = num(j.at("uncertainty"));
    r.status = status_from_string(j.at("status").get<std::string>());
    r.witness = j.at("witness").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SnapshotDiff {
  std::string check_id;
  std::string body_id;
  std::string what;
};

inline constexpr double kDriftTol = 0.05;

/// Compares rows against a snapshot keyed by (check_id, body_id). Status
/// flips are reported; report-only rows whose lhs or rhs moved by more than
/// 5% relative are marked Status::drift in place.
inline std::vector<SnapshotDiff> apply_snapshot(std::vector<InequalityReport>& rows,
                                                const std::vector<InequalityReport>& snapshot) {
  std::map<std::pair<std::string, std::string>, const InequalityReport*> index;
  for (const auto& s : snapshot) index[{s.check_id, s.body_id}] = &s;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  std::vector<SnapshotDiff> diffs;
  for (auto& r : rows) {
    auto it = index.find({r.check_id, r.body_id});
    if (it == index.end()) continue;
    const InequalityReport& s = *it->second;
    if (r.status != s.status) diffs.push_back({r.check_id, r.body_id, std::string("status ") + to_string(s.status) + " -> " + to_string(r.status)});
    if (r.status == Status::report && s.status == Status::report) {
      const double d = std::max(rel(r.lhs, s.lhs), rel(r.rhs, s.rhs));
      if (!(d <= kDriftTol)) {
        r.status = Status::drift;
        diffs.push_back({r.check_id, r.body_id, "drift " + format_number(d)});
      }
    }
  }
  return diffs;
}

}  // namespace lwlab
