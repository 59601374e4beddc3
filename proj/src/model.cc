// Copyright 2026 The cibgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cibgame/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cibgame {

using nlohmann::json;

std::string ToString(InfoStructure s) {
  switch (s) {
    case InfoStructure::kMaxInfo:
      return "maxinfo";
    case InfoStructure::kEncrypted:
      return "encrypted";
    case InfoStructure::kImperfect:
      return "imperfect";
  }
  return "?";
}

InfoStructure InfoStructureFromString(const std::string& s) {
  if (s == "maxinfo") return InfoStructure::kMaxInfo;
  if (s == "encrypted") return InfoStructure::kEncrypted;
  if (s == "imperfect") return InfoStructure::kImperfect;
  throw std::invalid_argument("unknown info structure '" + s + "'");
}

std::string ToString(ViolationKind k) {
  switch (k) {
    case ViolationKind::kNonStochasticKernel:
      return "NonStochasticKernel";
    case ViolationKind::kIndexOutOfRange:
      return "IndexOutOfRange";
    case ViolationKind::kNegativeCommCost:
      return "NegativeCommCost";
    case ViolationKind::kBadErasureProb:
      return "BadErasureProb";
    case ViolationKind::kNonFiniteCost:
      return "NonFiniteCost";
    case ViolationKind::kBadConstraint:
      return "BadConstraint";
    case ViolationKind::kMalformed:
      return "Malformed";
  }
  return "?";
}

std::string Violation::Message() const {
  std::string msg = ToString(kind) + " at " + location;
  if (!detail.empty()) msg += " (" + detail + ")";
  return msg;
}

namespace {

std::string JoinMessages(const std::vector<Violation>& v) {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out += "; ";
    out += x.Message();
  }
  return out;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CheckRow(const Prob& row, std::size_t expected, const std::string& where,
              std::vector<Violation>& out) {
  if (row.size() != expected) {
    out.push_back({ViolationKind::kIndexOutOfRange, where,
                   "expected " + std::to_string(expected) + " entries, got " +
                       std::to_string(row.size())});
    return;
  }
  double sum = 0.0;
  bool negative = false;
  for (double p : row) {
    if (!std::isfinite(p) || p < 0.0) negative = true;
    sum += p;
  }
  if (negative || std::abs(sum - 1.0) > kProbTolerance) {
    out.push_back({ViolationKind::kNonStochasticKernel, where,
                   negative ? "negative or non-finite entry"
                            : "row sum " + FormatDouble(sum)});
  }
}

template <typename T>
bool CheckSize(const std::vector<T>& v, std::size_t expected,
               const std::string& where, std::vector<Violation>& out) {
  if (v.size() == expected) return true;
  out.push_back({ViolationKind::kIndexOutOfRange, where,
                 "expected " + std::to_string(expected) + " entries, got " +
                     std::to_string(v.size())});
  return false;
}

std::string Idx(const std::string& name, int v) {
  return "[" + name + "=" + std::to_string(v) + "]";
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(JoinMessages(violations)),
      violations_(std::move(violations)) {}

std::vector<Violation> Validate(const GameModel& m) {
  std::vector<Violation> out;
  const std::size_t T = m.horizon;
  if (m.horizon < 1) {
    out.push_back({ViolationKind::kMalformed, "horizon", "must be >= 1"});
    return out;
  }
  struct Space {
    const char* name;
    const std::vector<std::string>* labels;
  } spaces[] = {{"x0", &m.x0_labels}, {"x1", &m.x1_labels},
                {"x2", &m.x2_labels}, {"u1", &m.u1_labels},
                {"u2", &m.u2_labels}, {"ua", &m.ua_labels},
                {"channel.states", &m.channel.labels}};
  for (const auto& s : spaces) {
    if (s.labels->empty()) {
      out.push_back({ViolationKind::kMalformed, std::string("spaces.") + s.name,
                     "empty space"});
    }
  }
  if (!out.empty()) return out;

  CheckRow(m.init_x0, m.NumX0(), "init_x0", out);
  CheckRow(m.init_x1, m.NumX(0), "init_x1", out);
  CheckRow(m.init_x2, m.NumX(1), "init_x2", out);
  CheckRow(m.channel.init, m.NumE(), "channel.init", out);

  if (CheckSize(m.global_kernel, T, "global_kernel", out)) {
    for (std::size_t t = 0; t < T; ++t) {
      const std::string wt = "global_kernel" + Idx("t", t);
      if (!CheckSize(m.global_kernel[t], m.NumX0(), wt, out)) continue;
      for (int x0 = 0; x0 < m.NumX0(); ++x0) {
        const std::string wx = wt + Idx("x0", x0);
        if (!CheckSize(m.global_kernel[t][x0], m.NumUa(), wx, out)) continue;
        for (int ua = 0; ua < m.NumUa(); ++ua) {
          CheckRow(m.global_kernel[t][x0][ua], m.NumX0(), wx + Idx("ua", ua),
                   out);
        }
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    const std::string name = "local_kernel_" + std::to_string(i + 1);
    const auto& k = m.local_kernel[i];
    if (!CheckSize(k, T, name, out)) continue;
    for (std::size_t t = 0; t < T; ++t) {
      const std::string wt = name + Idx("t", t);
      if (!CheckSize(k[t], m.NumX0(), wt, out)) continue;
      for (int x0 = 0; x0 < m.NumX0(); ++x0) {
        const std::string w0 = wt + Idx("x0", x0);
        if (!CheckSize(k[t][x0], m.NumX(i), w0, out)) continue;
        for (int x = 0; x < m.NumX(i); ++x) {
          const std::string wx = w0 + Idx("x", x);
          if (!CheckSize(k[t][x0][x], m.NumU(i), wx, out)) continue;
          for (int u = 0; u < m.NumU(i); ++u) {
            CheckRow(k[t][x0][x][u], m.NumX(i), wx + Idx("u", u), out);
          }
        }
      }
    }
  }
  if (CheckSize(m.channel.kernel, T, "channel.kernel", out)) {
    for (std::size_t t = 0; t < T; ++t) {
      const std::string wt = "channel.kernel" + Idx("t", t);
      if (!CheckSize(m.channel.kernel[t], m.NumE(), wt, out)) continue;
      for (int e = 0; e < m.NumE(); ++e) {
        CheckRow(m.channel.kernel[t][e], m.NumE(), wt + Idx("e", e), out);
      }
    }
  }
  const std::size_t cost_size = static_cast<std::size_t>(m.NumX0()) *
                                m.NumX(0) * m.NumX(1) * m.NumU(0) * m.NumU(1) *
                                m.NumUa();
  if (CheckSize(m.stage_cost, T, "stage_cost", out)) {
    for (std::size_t t = 0; t < T; ++t) {
      const std::string wt = "stage_cost" + Idx("t", t);
      if (!CheckSize(m.stage_cost[t], cost_size, wt, out)) continue;
      for (std::size_t k = 0; k < cost_size; ++k) {
        if (!std::isfinite(m.stage_cost[t][k])) {
          out.push_back({ViolationKind::kNonFiniteCost, wt,
                         "flat index " + std::to_string(k)});
          break;
        }
      }
    }
  }
  const std::size_t comm_size =
      static_cast<std::size_t>(m.NumX0()) * m.NumX(0) * m.NumX(1);
  if (CheckSize(m.comm_cost, comm_size, "comm_cost", out)) {
    for (int x0 = 0; x0 < m.NumX0(); ++x0) {
      for (int x1 = 0; x1 < m.NumX(0); ++x1) {
        for (int x2 = 0; x2 < m.NumX(1); ++x2) {
          const double r = m.CommCost(x0, x1, x2);
          const std::string w =
              "comm_cost" + Idx("x0", x0) + Idx("x1", x1) + Idx("x2", x2);
          if (!std::isfinite(r)) {
            out.push_back({ViolationKind::kNonFiniteCost, w, ""});
          } else if (r < 0.0) {
            out.push_back(
                {ViolationKind::kNegativeCommCost, w, FormatDouble(r)});
          }
        }
      }
    }
  }
  if (CheckSize(m.erasure_prob, m.NumX0(), "erasure_prob", out)) {
    for (int x0 = 0; x0 < m.NumX0(); ++x0) {
      const std::string w0 = "erasure_prob" + Idx("x0", x0);
      if (!CheckSize(m.erasure_prob[x0], m.NumE(), w0, out)) continue;
      for (int e = 0; e < m.NumE(); ++e) {
        const double p = m.erasure_prob[x0][e];
        if (!(p >= 0.0 && p <= 1.0)) {
          out.push_back({ViolationKind::kBadErasureProb, w0 + Idx("e", e),
                         FormatDouble(p)});
        }
      }
    }
  }
  if (m.constraints) {
    const auto& c = *m.constraints;
    if (c.s_min < 0 || c.s_max < c.s_min || c.n_max < 0 ||
        c.initial_clock < 0) {
      out.push_back({ViolationKind::kBadConstraint, "constraints",
                     "need 0 <= s_min <= s_max, n_max >= 0, clock >= 0"});
    }
  }
  if (m.observation) {
    const auto& ob = *m.observation;
    const int nz = 1 + m.NumPairs();
    if (ob.y_labels.empty()) {
      out.push_back({ViolationKind::kMalformed, "observation.y", "empty"});
    } else if (CheckSize(ob.kernel, m.NumX0(), "observation.kernel", out)) {
      for (int x0 = 0; x0 < m.NumX0(); ++x0) {
        const std::string w0 = "observation.kernel" + Idx("x0", x0);
        if (!CheckSize(ob.kernel[x0], 4, w0, out)) continue;
        for (int mm = 0; mm < 4; ++mm) {
          const std::string wm = w0 + Idx("m", mm);
          if (!CheckSize(ob.kernel[x0][mm], nz, wm, out)) continue;
          for (int z = 0; z < nz; ++z) {
            CheckRow(ob.kernel[x0][mm][z], ob.y_labels.size(),
                     wm + Idx("z", z), out);
          }
        }
      }
    }
  }
  return out;
}

double ParseProbabilityValue(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw std::invalid_argument("expected number or string");
  const std::string s = v.get<std::string>();
  const auto slash = s.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    const double d = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return d;
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  std::size_t un = 0, ud = 0;
  const double n = std::stod(num, &un);
  const double d = std::stod(den, &ud);
  if (un != num.size() || ud != den.size() || d == 0.0) {
    throw std::invalid_argument("bad ratio '" + s + "'");
  }
  return n / d;
}

namespace {

// Reads a nested array with the given dims into a flat vector, recording
// shape problems as violations.
class TensorReader {
 public:
  explicit TensorReader(std::vector<Violation>& out) : out_(out) {}

  bool Read(const json& v, const std::vector<std::size_t>& dims,
            const std::vector<std::string>& dim_names, std::size_t level,
            const std::string& where, std::vector<double>& flat) {
    if (level == dims.size()) {
      try {
        flat.push_back(ParseProbabilityValue(v));
      } catch (const std::exception& e) {
        out_.push_back({ViolationKind::kMalformed, where, e.what()});
        return false;
      }
      return true;
    }
    if (!v.is_array() || v.size() != dims[level]) {
      out_.push_back({ViolationKind::kIndexOutOfRange, where,
                      "expected array of " + std::to_string(dims[level]) +
                          " entries"});
      return false;
    }
    for (std::size_t k = 0; k < dims[level]; ++k) {
      if (!Read(v[k], dims, dim_names, level + 1,
                where + Idx(dim_names[level], static_cast<int>(k)), flat)) {
        return false;
      }
    }
    return true;
  }

  // Time-indexed field: either an array over t or {"stationary": tensor}.
  bool ReadTimed(const json& v, std::size_t horizon,
                 const std::vector<std::size_t>& dims,
                 const std::vector<std::string>& dim_names,
                 const std::string& where, std::vector<double>& flat) {
    if (v.is_object() && v.contains("stationary")) {
      std::vector<double> one;
      if (!Read(v["stationary"], dims, dim_names, 0, where + "[t=0]", one)) {
        return false;
      }
      for (std::size_t t = 0; t < horizon; ++t) {
        flat.insert(flat.end(), one.begin(), one.end());
      }
      return true;
    }
    std::vector<std::size_t> full{horizon};
    full.insert(full.end(), dims.begin(), dims.end());
    std::vector<std::string> names{"t"};
    names.insert(names.end(), dim_names.begin(), dim_names.end());
    return Read(v, full, names, 0, where, flat);
  }

 private:
  std::vector<Violation>& out_;
};

std::vector<std::string> ReadLabels(const json& doc, const char* key,
                                    std::vector<Violation>& out) {
  std::vector<std::string> labels;
  if (!doc.contains(key) || !doc[key].is_array()) {
    out.push_back({ViolationKind::kMalformed, std::string("spaces.") + key,
                   "missing label array"});
    return labels;
  }
  for (const auto& l : doc[key]) {
    labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  return labels;
}

const json* Field(const json& doc, const char* key,
                  std::vector<Violation>& out) {
  if (!doc.contains(key)) {
    out.push_back({ViolationKind::kMalformed, key, "missing field"});
    return nullptr;
  }
  return &doc[key];
}

Prob Slice(const std::vector<double>& flat, std::size_t begin, std::size_t n) {
  return Prob(flat.begin() + begin, flat.begin() + begin + n);
}

}  // namespace

GameModel ParseScenario(const json& doc) {
  std::vector<Violation> out;
  GameModel m;
  if (!doc.is_object()) {
    throw ValidationError({{ViolationKind::kMalformed, "<root>", "not an object"}});
  }
  if (!doc.contains("horizon") || !doc["horizon"].is_number_integer()) {
    throw ValidationError(
        {{ViolationKind::kMalformed, "horizon", "missing integer horizon"}});
  }
  m.horizon = doc["horizon"].get<int>();
  if (m.horizon < 1) {
    throw ValidationError({{ViolationKind::kMalformed, "horizon", "must be >= 1"}});
  }
  const std::size_t T = m.horizon;
  if (doc.contains("info_structure")) {
    try {
      m.info_structure =
          InfoStructureFromString(doc["info_structure"].get<std::string>());
    } catch (const std::exception& e) {
      out.push_back({ViolationKind::kMalformed, "info_structure", e.what()});
    }
  }
  const json* spaces = Field(doc, "spaces", out);
  if (spaces == nullptr) throw ValidationError(out);
  m.x0_labels = ReadLabels(*spaces, "x0", out);
  m.x1_labels = ReadLabels(*spaces, "x1", out);
  m.x2_labels = ReadLabels(*spaces, "x2", out);
  m.u1_labels = ReadLabels(*spaces, "u1", out);
  m.u2_labels = ReadLabels(*spaces, "u2", out);
  m.ua_labels = ReadLabels(*spaces, "ua", out);
  if (!out.empty()) throw ValidationError(out);

  TensorReader reader(out);
  const std::size_t nx0 = m.NumX0(), nx1 = m.NumX(0), nx2 = m.NumX(1);
  const std::size_t nu1 = m.NumU(0), nu2 = m.NumU(1), nua = m.NumUa();

  if (doc.contains("channel")) {
    const json& ch = doc["channel"];
    m.channel.labels = ReadLabels(ch, "states", out);
  }
  const std::size_t ne = m.channel.labels.size();
  if (!out.empty()) throw ValidationError(out);

  if (const json* init = Field(doc, "init", out)) {
    std::vector<double> flat;
    if (init->contains("x0") &&
        reader.Read((*init)["x0"], {nx0}, {"x0"}, 0, "init_x0", flat)) {
      m.init_x0 = flat;
    } else if (!init->contains("x0")) {
      out.push_back({ViolationKind::kMalformed, "init.x0", "missing"});
    }
    flat.clear();
    if (init->contains("x1") &&
        reader.Read((*init)["x1"], {nx1}, {"x1"}, 0, "init_x1", flat)) {
      m.init_x1 = flat;
    } else if (!init->contains("x1")) {
      out.push_back({ViolationKind::kMalformed, "init.x1", "missing"});
    }
    flat.clear();
    if (init->contains("x2") &&
        reader.Read((*init)["x2"], {nx2}, {"x2"}, 0, "init_x2", flat)) {
      m.init_x2 = flat;
    } else if (!init->contains("x2")) {
      out.push_back({ViolationKind::kMalformed, "init.x2", "missing"});
    }
  }

  if (const json* gk = Field(doc, "global_kernel", out)) {
    std::vector<double> flat;
    if (reader.ReadTimed(*gk, T, {nx0, nua, nx0}, {"x0", "ua", "next"},
                         "global_kernel", flat)) {
      m.global_kernel.assign(T, {});
      std::size_t k = 0;
      for (std::size_t t = 0; t < T; ++t) {
        m.global_kernel[t].assign(nx0, std::vector<Prob>(nua));
        for (std::size_t x0 = 0; x0 < nx0; ++x0) {
          for (std::size_t ua = 0; ua < nua; ++ua, k += nx0) {
            m.global_kernel[t][x0][ua] = Slice(flat, k, nx0);
          }
        }
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    const std::string name = "local_kernel_" + std::to_string(i + 1);
    const std::size_t nx = m.NumX(i), nu = m.NumU(i);
    if (const json* lk = Field(doc, name.c_str(), out)) {
      std::vector<double> flat;
      if (reader.ReadTimed(*lk, T, {nx0, nx, nu, nx}, {"x0", "x", "u", "next"},
                           name, flat)) {
        auto& dst = m.local_kernel[i];
        dst.assign(T, {});
        std::size_t k = 0;
        for (std::size_t t = 0; t < T; ++t) {
          dst[t].assign(nx0, std::vector<std::vector<Prob>>(
                                 nx, std::vector<Prob>(nu)));
          for (std::size_t x0 = 0; x0 < nx0; ++x0) {
            for (std::size_t x = 0; x < nx; ++x) {
              for (std::size_t u = 0; u < nu; ++u, k += nx) {
                dst[t][x0][x][u] = Slice(flat, k, nx);
              }
            }
          }
        }
      }
    }
  }
  if (const json* sc = Field(doc, "stage_cost", out)) {
    std::vector<double> flat;
    if (reader.ReadTimed(*sc, T, {nx0, nx1, nx2, nu1, nu2, nua},
                         {"x0", "x1", "x2", "u1", "u2", "ua"}, "stage_cost",
                         flat)) {
      const std::size_t n = flat.size() / T;
      m.stage_cost.assign(T, {});
      for (std::size_t t = 0; t < T; ++t) m.stage_cost[t] = Slice(flat, t * n, n);
    }
  }
  if (const json* cc = Field(doc, "comm_cost", out)) {
    std::vector<double> flat;
    if (cc->is_number() || cc->is_string()) {
      const double r = ParseProbabilityValue(*cc);
      m.comm_cost.assign(nx0 * nx1 * nx2, r);
    } else if (reader.Read(*cc, {nx0, nx1, nx2}, {"x0", "x1", "x2"}, 0,
                           "comm_cost", flat)) {
      m.comm_cost = flat;
    }
  }
  if (const json* ep = Field(doc, "erasure_prob", out)) {
    std::vector<double> flat;
    if (ep->is_number() || ep->is_string()) {
      m.erasure_prob.assign(nx0, std::vector<double>(ne, ParseProbabilityValue(*ep)));
    } else if (reader.Read(*ep, {nx0, ne}, {"x0", "e"}, 0, "erasure_prob",
                           flat)) {
      m.erasure_prob.assign(nx0, {});
      for (std::size_t x0 = 0; x0 < nx0; ++x0) {
        m.erasure_prob[x0] = Slice(flat, x0 * ne, ne);
      }
    }
  }
  if (doc.contains("channel")) {
    const json& ch = doc["channel"];
    std::vector<double> flat;
    if (ch.contains("init") &&
        reader.Read(ch["init"], {ne}, {"e"}, 0, "channel.init", flat)) {
      m.channel.init = flat;
    } else if (!ch.contains("init")) {
      out.push_back({ViolationKind::kMalformed, "channel.init", "missing"});
    }
    flat.clear();
    if (ch.contains("kernel") &&
        reader.ReadTimed(ch["kernel"], T, {ne, ne}, {"e", "next"},
                         "channel.kernel", flat)) {
      m.channel.kernel.assign(T, std::vector<Prob>(ne));
      std::size_t k = 0;
      for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t e = 0; e < ne; ++e, k += ne) {
          m.channel.kernel[t][e] = Slice(flat, k, ne);
        }
      }
    } else if (!ch.contains("kernel")) {
      out.push_back({ViolationKind::kMalformed, "channel.kernel", "missing"});
    }
  } else {
    m.channel.init = {1.0};
    m.channel.kernel.assign(T, std::vector<Prob>{Prob{1.0}});
  }
  if (doc.contains("constraints") && !doc["constraints"].is_null()) {
    const json& c = doc["constraints"];
    try {
      ConstraintSpec spec;
      spec.s_min = c.at("s_min").get<int>();
      spec.s_max = c.at("s_max").get<int>();
      spec.n_max = c.at("n_max").get<int>();
      spec.initial_clock = c.value("initial_clock", spec.s_min);
      m.constraints = spec;
    } catch (const std::exception& e) {
      out.push_back({ViolationKind::kMalformed, "constraints", e.what()});
    }
  }
  if (doc.contains("observation") && !doc["observation"].is_null()) {
    const json& ob = doc["observation"];
    ObservationModel om;
    om.y_labels = ReadLabels(ob, "y", out);
    const std::size_t ny = om.y_labels.size();
    const std::size_t nz = 1 + nx1 * nx2;
    std::vector<double> flat;
    if (ny > 0 && ob.contains("kernel") &&
        reader.Read(ob["kernel"], {nx0, 4, nz, ny}, {"x0", "m", "z", "y"}, 0,
                    "observation.kernel", flat)) {
      om.kernel.assign(nx0, std::vector<std::vector<Prob>>(4, std::vector<Prob>(nz)));
      std::size_t k = 0;
      for (std::size_t x0 = 0; x0 < nx0; ++x0) {
        for (std::size_t mm = 0; mm < 4; ++mm) {
          for (std::size_t z = 0; z < nz; ++z, k += ny) {
            om.kernel[x0][mm][z] = Slice(flat, k, ny);
          }
        }
      }
      m.observation = om;
    } else if (!ob.contains("kernel")) {
      out.push_back({ViolationKind::kMalformed, "observation.kernel", "missing"});
    }
  }
  if (!out.empty()) throw ValidationError(out);
  auto violations = Validate(m);
  if (!violations.empty()) throw ValidationError(violations);
  return m;
}

GameModel LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError({{ViolationKind::kMalformed, path, e.what()}});
  }
  return ParseScenario(doc);
}

json SerializeModel(const GameModel& m) {
  json doc;
  doc["horizon"] = m.horizon;
  doc["info_structure"] = ToString(m.info_structure);
  doc["spaces"] = {{"x0", m.x0_labels}, {"x1", m.x1_labels},
                   {"x2", m.x2_labels}, {"u1", m.u1_labels},
                   {"u2", m.u2_labels}, {"ua", m.ua_labels}};
  doc["init"] = {{"x0", m.init_x0}, {"x1", m.init_x1}, {"x2", m.init_x2}};
  doc["global_kernel"] = m.global_kernel;
  doc["local_kernel_1"] = m.local_kernel[0];
  doc["local_kernel_2"] = m.local_kernel[1];
  json costs = json::array();
  for (int t = 0; t < m.horizon; ++t) {
    json per_x0 = json::array();
    for (int x0 = 0; x0 < m.NumX0(); ++x0) {
      json per_x1 = json::array();
      for (int x1 = 0; x1 < m.NumX(0); ++x1) {
        json per_x2 = json::array();
        for (int x2 = 0; x2 < m.NumX(1); ++x2) {
          json per_u1 = json::array();
          for (int u1 = 0; u1 < m.NumU(0); ++u1) {
            json per_u2 = json::array();
            for (int u2 = 0; u2 < m.NumU(1); ++u2) {
              json per_ua = json::array();
              for (int ua = 0; ua < m.NumUa(); ++ua) {
                per_ua.push_back(m.Cost(t, x0, x1, x2, u1, u2, ua));
              }
              per_u2.push_back(per_ua);
            }
            per_u1.push_back(per_u2);
          }
          per_x2.push_back(per_u1);
        }
        per_x1.push_back(per_x2);
      }
      per_x0.push_back(per_x1);
    }
    costs.push_back(per_x0);
  }
  doc["stage_cost"] = costs;
  json comm = json::array();
  for (int x0 = 0; x0 < m.NumX0(); ++x0) {
    json a = json::array();
    for (int x1 = 0; x1 < m.NumX(0); ++x1) {
      json b = json::array();
      for (int x2 = 0; x2 < m.NumX(1); ++x2) b.push_back(m.CommCost(x0, x1, x2));
      a.push_back(b);
    }
    comm.push_back(a);
  }
  doc["comm_cost"] = comm;
  doc["erasure_prob"] = m.erasure_prob;
  doc["channel"] = {{"states", m.channel.labels},
                    {"init", m.channel.init},
                    {"kernel", m.channel.kernel}};
  if (m.constraints) {
    doc["constraints"] = {{"s_min", m.constraints->s_min},
                          {"s_max", m.constraints->s_max},
                          {"n_max", m.constraints->n_max},
                          {"initial_clock", m.constraints->initial_clock}};
  }
  if (m.observation) {
    doc["observation"] = {{"y", m.observation->y_labels},
                          {"kernel", m.observation->kernel}};
  }
  return doc;
}

std::string CanonicalText(const GameModel& model) {
  return SerializeModel(model).dump();
}

std::string ModelHash(const GameModel& model) {
  const std::string text = CanonicalText(model);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool IsTeamProblem(const GameModel& model) { return model.NumUa() == 1; }

}  // namespace cibgame
