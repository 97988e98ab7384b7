#include "coeffbound/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coeffbound/inequalities.hpp"
#include "coeffbound/kernels.hpp"
#include "coeffbound/proofchain.hpp"
#include "coeffbound/rng.hpp"
#include "coeffbound/search.hpp"
#include "coeffbound/version.hpp"

namespace coeffbound::cli {
namespace {

// ---------------------------------------------------------------- JSON

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Minimal JSON tree with insertion-ordered objects, so serialization is
// byte-deterministic and the key order matches the documented schema.
class JsonValue {
 public:
  enum class Kind { object, array, string, number, int64, uint64, boolean, null };

  JsonValue() : kind_(Kind::null) {}

  static JsonValue object() { return JsonValue(Kind::object); }
  static JsonValue array() { return JsonValue(Kind::array); }
  static JsonValue str(std::string s) {
    JsonValue v(Kind::string);
    v.s_ = std::move(s);
    return v;
  }
  static JsonValue num(double d) {
    JsonValue v(Kind::number);
    v.d_ = d;
    return v;
  }
  static JsonValue integer(std::int64_t i) {
    JsonValue v(Kind::int64);
    v.i_ = i;
    return v;
  }
  static JsonValue uinteger(std::uint64_t u) {
    JsonValue v(Kind::uint64);
    v.u_ = u;
    return v;
  }
  static JsonValue boolean(bool b) {
    JsonValue v(Kind::boolean);
    v.b_ = b;
    return v;
  }

  JsonValue& set(std::string key, JsonValue val) {
    obj_.emplace_back(std::move(key), std::move(val));
    return *this;
  }
  JsonValue& push(JsonValue val) {
    arr_.push_back(std::move(val));
    return *this;
  }

  void dump(std::string& out, int indent = 0) const {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad1(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (kind_) {
      case Kind::object: {
        if (obj_.empty()) {
          out += "{}";
          return;
        }
        out += "{\n";
        for (std::size_t i = 0; i < obj_.size(); ++i) {
          out += pad1;
          escape(obj_[i].first, out);
          out += ": ";
          obj_[i].second.dump(out, indent + 1);
          if (i + 1 < obj_.size()) out += ',';
          out += '\n';
        }
        out += pad + "}";
        return;
      }
      case Kind::array: {
        if (arr_.empty()) {
          out += "[]";
          return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < arr_.size(); ++i) {
          out += pad1;
          arr_[i].dump(out, indent + 1);
          if (i + 1 < arr_.size()) out += ',';
          out += '\n';
        }
        out += pad + "]";
        return;
      }
      case Kind::string:
        escape(s_, out);
        return;
      case Kind::number:
        out += fmt_double(d_);
        return;
      case Kind::int64:
        out += std::to_string(i_);
        return;
      case Kind::uint64:
        out += std::to_string(u_);
        return;
      case Kind::boolean:
        out += b_ ? "true" : "false";
        return;
      case Kind::null:
        out += "null";
        return;
    }
  }

 private:
  explicit JsonValue(Kind k) : kind_(k) {}

  static void escape(const std::string& s, std::string& out) {
    out += '"';
    for (const char ch : s) {
      switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", ch);
            out += buf;
          } else {
            out += ch;
          }
      }
    }
    out += '"';
  }

  Kind kind_;
  std::string s_;
  double d_ = 0.0;
  std::int64_t i_ = 0;
  std::uint64_t u_ = 0;
  bool b_ = false;
  std::vector<std::pair<std::string, JsonValue>> obj_;
  std::vector<JsonValue> arr_;
};

// ----------------------------------------------------------------- CSV

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class CsvWriter {
 public:
  CsvWriter& field(const std::string& s) {
    if (!first_) body_ += ',';
    body_ += csv_escape(s);
    first_ = false;
    return *this;
  }
  CsvWriter& field(double v) { return field(fmt_double(v)); }
  CsvWriter& field(std::int64_t v) { return field(std::to_string(v)); }
  CsvWriter& field(bool b) { return field(std::string(b ? "true" : "false")); }
  void endrow() {
    body_ += '\n';
    first_ = true;
  }
  const std::string& text() const { return body_; }

 private:
  std::string body_;
  bool first_ = true;
};

// --------------------------------------------------------------- shared

std::string iso_utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunConfig {
  std::string command;
  std::string lambda_text;
  std::vector<double> lambdas;
  std::size_t samples = 1000;
  int starts = 64;
  int budget = 20000;
  std::uint64_t seed = 1;
  double mu = 0.0, nu = 0.0;
  bool mu_given = false, nu_given = false;
  std::string format = "json";
  std::string out_path;
  bool no_timestamp = false;
};

bool parse_lambda_grid(const std::string& text, std::vector<double>& out,
                       std::string& error) {
  out.clear();
  std::vector<std::string> parts;
  std::string cur;
  for (const char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);

  auto to_double = [](const std::string& s, double& v) {
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return !s.empty() && end == s.c_str() + s.size();
  };

  if (parts.size() == 1) {
    double v;
    if (!to_double(parts[0], v)) {
      error = "--lambda: cannot parse '" + text + "'";
      return false;
    }
    out.push_back(v);
  } else if (parts.size() == 3) {
    double start, stop, countd;
    if (!to_double(parts[0], start) || !to_double(parts[1], stop) ||
        !to_double(parts[2], countd) || countd != std::floor(countd) ||
        countd < 1) {
      error = "--lambda: grid must be start:stop:count with count >= 1, got '" +
              text + "'";
      return false;
    }
    const int count = static_cast<int>(countd);
    if (count == 1) {
      out.push_back(start);
    } else {
      for (int i = 0; i < count; ++i)
        out.push_back(start + static_cast<double>(i) * (stop - start) /
                                  static_cast<double>(count - 1));
    }
  } else {
    error = "--lambda: expected a value or start:stop:count, got '" + text + "'";
    return false;
  }

  for (const double v : out) {
    if (!(v > 0.0) || !(v <= 1.0)) {
      error = "--lambda: values must lie in (0, 1], got " + fmt_double(v);
      return false;
    }
  }
  return true;
}

JsonValue tuple_json(const schwarz::CoeffTuple& c) {
  JsonValue t = JsonValue::object();
  t.set("c1_re", JsonValue::num(c.c1.real()));
  t.set("c1_im", JsonValue::num(c.c1.imag()));
  t.set("c2_re", JsonValue::num(c.c2.real()));
  t.set("c2_im", JsonValue::num(c.c2.imag()));
  t.set("c3_re", JsonValue::num(c.c3.real()));
  t.set("c3_im", JsonValue::num(c.c3.imag()));
  t.set("c4_re", JsonValue::num(c.c4.real()));
  t.set("c4_im", JsonValue::num(c.c4.imag()));
  return t;
}

void csv_tuple_header(CsvWriter& w) {
  for (const char* name : {"c1_re", "c1_im", "c2_re", "c2_im", "c3_re",
                           "c3_im", "c4_re", "c4_im"})
    w.field(std::string(name));
}

void csv_tuple_fields(CsvWriter& w, const schwarz::CoeffTuple& c) {
  w.field(c.c1.real()).field(c.c1.imag());
  w.field(c.c2.real()).field(c.c2.imag());
  w.field(c.c3.real()).field(c.c3.imag());
  w.field(c.c4.real()).field(c.c4.imag());
}

struct Report {
  JsonValue params = JsonValue::object();
  JsonValue results = JsonValue::object();
  JsonValue violations = JsonValue::array();
  int violation_count = 0;
  std::string csv;
};

// Assembles the document (top-level keys exactly: command, params,
// results, violations, seed, version), writes it to --out or the stream,
// and maps violations to the exit code.
int emit(const RunConfig& cfg, Report&& rep, std::ostream& out,
         std::ostream& err) {
  if (!cfg.no_timestamp)
    rep.params.set("timestamp", JsonValue::str(iso_utc_now()));

  std::string text;
  if (cfg.format == "json") {
    JsonValue doc = JsonValue::object();
    doc.set("command", JsonValue::str(cfg.command));
    doc.set("params", std::move(rep.params));
    doc.set("results", std::move(rep.results));
    doc.set("violations", std::move(rep.violations));
    doc.set("seed", JsonValue::uinteger(cfg.seed));
    doc.set("version", JsonValue::str(std::string(kVersion)));
    doc.dump(text);
    text += '\n';
  } else {
    text = rep.csv;
  }

  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) {
      err << "cannot open output file: " << cfg.out_path << "\n";
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  return rep.violation_count > 0 ? 1 : 0;
}

constexpr int kMaxSerializedViolations = 25;

void add_violation(Report& rep, JsonValue entry) {
  if (rep.violation_count < kMaxSerializedViolations)
    rep.violations.push(std::move(entry));
  rep.violation_count += 1;
}

// -------------------------------------------------------------- lambda0

int handle_lambda0(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double l0 = inequalities::lambda0();
  const double l0_res = inequalities::lambda0_poly(l0);
  const double thr = inequalities::ps_threshold();
  const double thr_res = (9.0 * thr + 8.0) * thr - 4.0;

  Report rep;
  rep.results.set("lambda0", JsonValue::num(l0));
  rep.results.set("lambda0_residual", JsonValue::num(l0_res));
  rep.results.set("ps_threshold", JsonValue::num(thr));
  rep.results.set("ps_threshold_residual", JsonValue::num(thr_res));

  CsvWriter w;
  w.field(std::string("name")).field(std::string("value"));
  w.endrow();
  w.field(std::string("lambda0")).field(l0);
  w.endrow();
  w.field(std::string("lambda0_residual")).field(l0_res);
  w.endrow();
  w.field(std::string("ps_threshold")).field(thr);
  w.endrow();
  w.field(std::string("ps_threshold_residual")).field(thr_res);
  w.endrow();
  rep.csv = w.text();
  return emit(cfg, std::move(rep), out, err);
}

// --------------------------------------------------------------- verify

struct SuiteStats {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  double worst = 0.0;  // headline statistic, named in the JSON
};

int handle_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report rep;
  rep.params.set("lambda", JsonValue::str(cfg.lambda_text));
  rep.params.set("samples", JsonValue::integer(static_cast<std::int64_t>(cfg.samples)));

  JsonValue suites = JsonValue::array();
  std::vector<SuiteStats> table;

  // One sample set per lambda, shared by the tuple-based suites.
  std::vector<kernels::CoeffBatch> batches;
  std::vector<std::vector<schwarz::CoeffTuple>> tuples;
  for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
    tuples.push_back(
        schwarz::sample(Rng::derive(cfg.seed, 100 + i), cfg.samples, true));
    batches.push_back(kernels::CoeffBatch::from(tuples.back()));
  }

  // identity: |L - 4|a5|^2| / (1 + L) <= 1e-9 on every sample.
  {
    SuiteStats st{"identity"};
    std::vector<double> res(cfg.samples);
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
      const coeffs::Lambda lam(cfg.lambdas[i]);
      kernels::identity_residual_rel(lam, batches[i], res);
      for (std::size_t j = 0; j < res.size(); ++j) {
        ++st.checks;
        st.worst = std::max(st.worst, res[j]);
        if (res[j] > 1e-9) {
          ++st.failures;
          JsonValue v = JsonValue::object();
          v.set("suite", JsonValue::str("identity"));
          v.set("lambda", JsonValue::num(cfg.lambdas[i]));
          v.set("index", JsonValue::integer(static_cast<std::int64_t>(j)));
          v.set("observed", JsonValue::num(res[j]));
          v.set("bound", JsonValue::num(1e-9));
          v.set("seed", JsonValue::uinteger(cfg.seed));
          v.set("tuple", tuple_json(tuples[i][j]));
          add_violation(rep, std::move(v));
        }
      }
    }
    JsonValue s = JsonValue::object();
    s.set("name", JsonValue::str(st.name));
    s.set("checks", JsonValue::integer(st.checks));
    s.set("failures", JsonValue::integer(st.failures));
    s.set("max_residual", JsonValue::num(st.worst));
    suites.push(std::move(s));
    table.push_back(st);
  }

  // leverenz: form >= -1e-8 at the witness and at random weight vectors.
  {
    SuiteStats st{"leverenz"};
    st.worst = std::numeric_limits<double>::infinity();
    std::vector<double> vals(cfg.samples);
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
      const coeffs::Lambda lam(cfg.lambdas[i]);
      kernels::leverenz_witness(lam, batches[i], vals);
      Rng zr(Rng::derive(cfg.seed, 200 + i));
      for (std::size_t j = 0; j < cfg.samples; ++j) {
        auto record = [&](double value, const char* which) {
          ++st.checks;
          st.worst = std::min(st.worst, value);
          if (value < -1e-8) {
            ++st.failures;
            JsonValue v = JsonValue::object();
            v.set("suite", JsonValue::str("leverenz"));
            v.set("kind", JsonValue::str(which));
            v.set("lambda", JsonValue::num(cfg.lambdas[i]));
            v.set("index", JsonValue::integer(static_cast<std::int64_t>(j)));
            v.set("observed", JsonValue::num(value));
            v.set("bound", JsonValue::num(-1e-8));
            v.set("seed", JsonValue::uinteger(cfg.seed));
            v.set("tuple", tuple_json(tuples[i][j]));
            add_violation(rep, std::move(v));
          }
        };
        record(vals[j], "witness");
        const auto p = coeffs::p_from_c(tuples[i][j]).as_array();
        for (int rep_z = 0; rep_z < 10; ++rep_z) {
          std::array<cplx, 4> z;
          for (auto& zk : z) {
            const double r = 10.0 * std::sqrt(zr.uniform());
            const double th = 2.0 * 3.14159265358979323846 * zr.uniform();
            zk = std::polar(r, th);
          }
          record(proofchain::leverenz_form(p, z), "random_z");
        }
      }
    }
    JsonValue s = JsonValue::object();
    s.set("name", JsonValue::str(st.name));
    s.set("checks", JsonValue::integer(st.checks));
    s.set("failures", JsonValue::integer(st.failures));
    s.set("min_value", JsonValue::num(st.worst));
    suites.push(std::move(s));
    table.push_back(st);
  }

  // chain: the five bound values are nondecreasing (guaranteed only for
  // lambda >= lambda0; decreases below that are reported, not failures).
  std::int64_t below_lambda0_decreases = 0;
  {
    SuiteStats st{"chain"};
    const double l0 = inequalities::lambda0();
    std::vector<double> r(cfg.samples), ps(cfg.samples), c2(cfg.samples),
        ff(cfg.samples), fin(cfg.samples);
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
      const coeffs::Lambda lam(cfg.lambdas[i]);
      kernels::chain_values(lam, batches[i], r, ps, c2, ff, fin);
      const bool guaranteed = cfg.lambdas[i] >= l0;
      for (std::size_t j = 0; j < cfg.samples; ++j) {
        ++st.checks;
        const std::array<double, 5> v{r[j], ps[j], c2[j], ff[j], fin[j]};
        double max_drop = 0.0;
        bool bad = false;
        for (int kq = 0; kq < 4; ++kq) {
          const double drop = v[kq] - v[kq + 1];
          max_drop = std::max(max_drop, drop);
          if (drop > rel_margin(std::max(std::abs(v[kq]), std::abs(v[kq + 1]))))
            bad = true;
        }
        if (guaranteed) st.worst = std::max(st.worst, max_drop);
        if (bad) {
          if (!guaranteed) {
            ++below_lambda0_decreases;
            continue;
          }
          ++st.failures;
          JsonValue vio = JsonValue::object();
          vio.set("suite", JsonValue::str("chain"));
          vio.set("lambda", JsonValue::num(cfg.lambdas[i]));
          vio.set("index", JsonValue::integer(static_cast<std::int64_t>(j)));
          vio.set("observed", JsonValue::num(max_drop));
          vio.set("bound", JsonValue::num(0.0));
          vio.set("seed", JsonValue::uinteger(cfg.seed));
          vio.set("tuple", tuple_json(tuples[i][j]));
          JsonValue vals = JsonValue::array();
          for (const double x : v) vals.push(JsonValue::num(x));
          vio.set("values", std::move(vals));
          add_violation(rep, std::move(vio));
        }
      }
    }
    JsonValue s = JsonValue::object();
    s.set("name", JsonValue::str(st.name));
    s.set("checks", JsonValue::integer(st.checks));
    s.set("failures", JsonValue::integer(st.failures));
    s.set("max_decrease", JsonValue::num(st.worst));
    s.set("below_lambda0_decreases",
          JsonValue::integer(below_lambda0_decreases));
    suites.push(std::move(s));
    table.push_back(st);
  }

  // f_grid: F <= 1e-10 on [lambda0, 1] x [0, 1], F(lambda, 1) = 0 within
  // 1e-12, and max_t F strictly positive below lambda0 (probes).
  {
    SuiteStats st{"f_grid"};
    st.worst = -std::numeric_limits<double>::infinity();
    const double l0 = inequalities::lambda0();
    const std::size_t nt = std::max<std::size_t>(cfg.samples, 100);
    std::vector<double> ts(nt), fs(nt);
    for (std::size_t j = 0; j < nt; ++j)
      ts[j] = static_cast<double>(j) / static_cast<double>(nt - 1);
    constexpr int kNL = 200;
    double max_endpoint = 0.0;
    for (int i = 0; i < kNL; ++i) {
      const double l =
          l0 + (1.0 - l0) * static_cast<double>(i) / (kNL - 1);
      const coeffs::Lambda lam(l);
      kernels::f_values(lam, ts, fs);
      for (std::size_t j = 0; j < nt; ++j) {
        ++st.checks;
        st.worst = std::max(st.worst, fs[j]);
        if (fs[j] > 1e-10) {
          ++st.failures;
          JsonValue v = JsonValue::object();
          v.set("suite", JsonValue::str("f_grid"));
          v.set("lambda", JsonValue::num(l));
          v.set("t", JsonValue::num(ts[j]));
          v.set("observed", JsonValue::num(fs[j]));
          v.set("bound", JsonValue::num(1e-10));
          v.set("seed", JsonValue::uinteger(cfg.seed));
          add_violation(rep, std::move(v));
        }
      }
      ++st.checks;
      const double endpoint = std::abs(inequalities::F(lam, 1.0));
      max_endpoint = std::max(max_endpoint, endpoint);
      if (endpoint > 1e-12) {
        ++st.failures;
        JsonValue v = JsonValue::object();
        v.set("suite", JsonValue::str("f_grid"));
        v.set("kind", JsonValue::str("endpoint"));
        v.set("lambda", JsonValue::num(l));
        v.set("observed", JsonValue::num(endpoint));
        v.set("bound", JsonValue::num(1e-12));
        v.set("seed", JsonValue::uinteger(cfg.seed));
        add_violation(rep, std::move(v));
      }
    }
    bool probes_ok = true;
    for (const double l : {0.30, 0.35, 0.39}) {
      const coeffs::Lambda lam(l);
      kernels::f_values(lam, ts, fs);
      double mx = -std::numeric_limits<double>::infinity();
      for (const double fv : fs) mx = std::max(mx, fv);
      ++st.checks;
      if (!(mx > 0.0)) {
        probes_ok = false;
        ++st.failures;
        JsonValue v = JsonValue::object();
        v.set("suite", JsonValue::str("f_grid"));
        v.set("kind", JsonValue::str("positivity_probe"));
        v.set("lambda", JsonValue::num(l));
        v.set("observed", JsonValue::num(mx));
        v.set("bound", JsonValue::num(0.0));
        v.set("seed", JsonValue::uinteger(cfg.seed));
        add_violation(rep, std::move(v));
      }
    }
    JsonValue s = JsonValue::object();
    s.set("name", JsonValue::str(st.name));
    s.set("checks", JsonValue::integer(st.checks));
    s.set("failures", JsonValue::integer(st.failures));
    s.set("max_value", JsonValue::num(st.worst));
    s.set("max_endpoint_abs", JsonValue::num(max_endpoint));
    s.set("positivity_probes_ok", JsonValue::boolean(probes_ok));
    suites.push(std::move(s));
    table.push_back(st);
  }

  // ps: the cubic functional stays within its sharp bound nu wherever
  // the (mu, nu) pair lies in the validity region.
  {
    SuiteStats st{"ps"};
    JsonValue skipped = JsonValue::array();
    std::vector<double> vals(cfg.samples);
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
      const coeffs::Lambda lam(cfg.lambdas[i]);
      const auto pp = inequalities::ps_params(lam);
      if (!pp.in_region) {
        skipped.push(JsonValue::num(cfg.lambdas[i]));
        continue;
      }
      kernels::ps_functional(pp.mu, pp.nu, batches[i], vals);
      for (std::size_t j = 0; j < cfg.samples; ++j) {
        ++st.checks;
        const double excess = vals[j] - pp.nu;
        st.worst = std::max(st.worst, excess);
        if (excess > 1e-9) {
          ++st.failures;
          JsonValue v = JsonValue::object();
          v.set("suite", JsonValue::str("ps"));
          v.set("lambda", JsonValue::num(cfg.lambdas[i]));
          v.set("index", JsonValue::integer(static_cast<std::int64_t>(j)));
          v.set("observed", JsonValue::num(vals[j]));
          v.set("bound", JsonValue::num(pp.nu));
          v.set("seed", JsonValue::uinteger(cfg.seed));
          v.set("tuple", tuple_json(tuples[i][j]));
          add_violation(rep, std::move(v));
        }
      }
    }
    st.worst = st.checks == 0 ? 0.0 : st.worst;
    JsonValue s = JsonValue::object();
    s.set("name", JsonValue::str(st.name));
    s.set("checks", JsonValue::integer(st.checks));
    s.set("failures", JsonValue::integer(st.failures));
    s.set("max_excess", JsonValue::num(st.worst));
    s.set("skipped_lambdas", std::move(skipped));
    suites.push(std::move(s));
    table.push_back(st);
  }

  JsonValue grid = JsonValue::array();
  for (const double l : cfg.lambdas) grid.push(JsonValue::num(l));
  rep.results.set("lambda_grid", std::move(grid));
  rep.results.set("suites", std::move(suites));
  rep.results.set("passed", JsonValue::boolean(rep.violation_count == 0));

  CsvWriter w;
  w.field(std::string("suite")).field(std::string("checks"));
  w.field(std::string("failures")).field(std::string("worst"));
  w.endrow();
  for (const auto& st : table) {
    w.field(st.name).field(st.checks).field(st.failures).field(st.worst);
    w.endrow();
  }
  rep.csv = w.text();
  return emit(cfg, std::move(rep), out, err);
}

// ---------------------------------------------------------------- sweep

int handle_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report rep;
  rep.params.set("lambda", JsonValue::str(cfg.lambda_text));
  rep.params.set("starts", JsonValue::integer(cfg.starts));
  rep.params.set("budget", JsonValue::integer(cfg.budget));

  const auto rows = search::sweep(cfg.lambdas, cfg.starts, cfg.budget, cfg.seed);
  const double l0 = inequalities::lambda0();

  JsonValue jrows = JsonValue::array();
  CsvWriter w;
  w.field(std::string("lambda")).field(std::string("max_a5"));
  w.field(std::string("bound")).field(std::string("gap"));
  w.endrow();
  for (const auto& r : rows) {
    JsonValue jr = JsonValue::object();
    jr.set("lambda", JsonValue::num(r.lambda));
    jr.set("max_a5", JsonValue::num(r.max_a5));
    jr.set("bound", JsonValue::num(r.bound));
    jr.set("gap", JsonValue::num(r.gap));
    jrows.push(std::move(jr));
    w.field(r.lambda).field(r.max_a5).field(r.bound).field(r.gap);
    w.endrow();

    if (r.lambda >= l0 && r.gap < -1e-6) {
      JsonValue v = JsonValue::object();
      v.set("suite", JsonValue::str("sweep"));
      v.set("lambda", JsonValue::num(r.lambda));
      v.set("observed", JsonValue::num(r.max_a5));
      v.set("bound", JsonValue::num(r.bound));
      v.set("seed", JsonValue::uinteger(cfg.seed));
      add_violation(rep, std::move(v));
    }
  }
  rep.results.set("rows", std::move(jrows));
  rep.csv = w.text();
  return emit(cfg, std::move(rep), out, err);
}

// --------------------------------------------------------------- search

int handle_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report rep;
  const double l = cfg.lambdas[0];
  const coeffs::Lambda lam(l);
  rep.params.set("lambda", JsonValue::num(l));
  rep.params.set("starts", JsonValue::integer(cfg.starts));
  rep.params.set("budget", JsonValue::integer(cfg.budget));

  const auto r = search::maximize_a5(lam, cfg.starts, cfg.budget, cfg.seed);
  const double bound = coeffs::q(4, lam);
  const double gap = bound - r.best_value;

  rep.results.set("lambda", JsonValue::num(l));
  rep.results.set("best_value", JsonValue::num(r.best_value));
  rep.results.set("bound", JsonValue::num(bound));
  rep.results.set("gap", JsonValue::num(gap));
  rep.results.set("starts", JsonValue::integer(r.starts));
  rep.results.set("evaluations", JsonValue::integer(r.evaluations));
  rep.results.set("argmax", tuple_json(r.argmax));

  if (l >= inequalities::lambda0() && r.best_value > bound + 1e-6) {
    JsonValue v = JsonValue::object();
    v.set("suite", JsonValue::str("search"));
    v.set("lambda", JsonValue::num(l));
    v.set("observed", JsonValue::num(r.best_value));
    v.set("bound", JsonValue::num(bound));
    v.set("seed", JsonValue::uinteger(cfg.seed));
    v.set("tuple", tuple_json(r.argmax));
    add_violation(rep, std::move(v));
  }

  CsvWriter w;
  w.field(std::string("lambda")).field(std::string("best_value"));
  w.field(std::string("bound")).field(std::string("gap"));
  w.field(std::string("starts")).field(std::string("evaluations"));
  csv_tuple_header(w);
  w.endrow();
  w.field(l).field(r.best_value).field(bound).field(gap);
  w.field(static_cast<std::int64_t>(r.starts)).field(r.evaluations);
  csv_tuple_fields(w, r.argmax);
  w.endrow();
  rep.csv = w.text();
  return emit(cfg, std::move(rep), out, err);
}

// ------------------------------------------------------------- ps-check

int handle_ps_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report rep;
  double mu, nu;
  if (cfg.mu_given) {
    mu = cfg.mu;
    nu = cfg.nu;
    rep.params.set("mu", JsonValue::num(mu));
    rep.params.set("nu", JsonValue::num(nu));
  } else {
    const coeffs::Lambda lam(cfg.lambdas[0]);
    const auto pp = inequalities::ps_params(lam);
    mu = pp.mu;
    nu = pp.nu;
    rep.params.set("lambda", JsonValue::num(cfg.lambdas[0]));
  }
  rep.params.set("starts", JsonValue::integer(cfg.starts));
  rep.params.set("budget", JsonValue::integer(cfg.budget));

  const bool in_region = inequalities::ps_region(mu, nu);
  const auto r = search::maximize_ps(mu, nu, cfg.starts, cfg.budget, cfg.seed);
  const bool exceeds = r.best_value > nu + 1e-6;

  rep.results.set("mu", JsonValue::num(mu));
  rep.results.set("nu", JsonValue::num(nu));
  rep.results.set("in_region", JsonValue::boolean(in_region));
  rep.results.set("best_value", JsonValue::num(r.best_value));
  rep.results.set("bound", JsonValue::num(nu));
  rep.results.set("bound_exceeded", JsonValue::boolean(exceeds));
  rep.results.set("starts", JsonValue::integer(r.starts));
  rep.results.set("evaluations", JsonValue::integer(r.evaluations));
  rep.results.set("argmax", tuple_json(r.argmax));

  // Exceeding nu outside the validity region is expected exploration
  // data, not a failure; inside the region it falsifies the bound.
  if (in_region && exceeds) {
    JsonValue v = JsonValue::object();
    v.set("suite", JsonValue::str("ps-check"));
    v.set("mu", JsonValue::num(mu));
    v.set("nu", JsonValue::num(nu));
    v.set("observed", JsonValue::num(r.best_value));
    v.set("bound", JsonValue::num(nu));
    v.set("seed", JsonValue::uinteger(cfg.seed));
    v.set("tuple", tuple_json(r.argmax));
    add_violation(rep, std::move(v));
  }

  CsvWriter w;
  w.field(std::string("mu")).field(std::string("nu"));
  w.field(std::string("in_region")).field(std::string("best_value"));
  w.field(std::string("bound")).field(std::string("bound_exceeded"));
  csv_tuple_header(w);
  w.endrow();
  w.field(mu).field(nu).field(in_region).field(r.best_value).field(nu);
  w.field(exceeds);
  csv_tuple_fields(w, r.argmax);
  w.endrow();
  rep.csv = w.text();
  return emit(cfg, std::move(rep), out, err);
}

// ---------------------------------------------------------------- chain

int handle_chain(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report rep;
  const double l = cfg.lambdas[0];
  const coeffs::Lambda lam(l);
  rep.params.set("lambda", JsonValue::num(l));
  rep.params.set("samples", JsonValue::integer(static_cast<std::int64_t>(cfg.samples)));

  const auto tuples = schwarz::sample(cfg.seed, cfg.samples, true);

  std::int64_t non_monotone = 0;
  double worst_decrease = 0.0;
  CsvWriter w;
  w.field(std::string("index"));
  for (const auto name : proofchain::ChainReport::names)
    w.field(std::string(name));
  w.field(std::string("monotone"));
  w.endrow();

  const bool guaranteed = l >= inequalities::lambda0();
  for (std::size_t j = 0; j < tuples.size(); ++j) {
    const auto rp = proofchain::chain(lam, tuples[j]);
    w.field(static_cast<std::int64_t>(j));
    for (const double v : rp.values()) w.field(v);
    w.field(rp.monotone);
    w.endrow();
    if (!rp.monotone) {
      ++non_monotone;
      worst_decrease = std::max(worst_decrease, rp.max_decrease);
      if (guaranteed) {
        JsonValue v = JsonValue::object();
        v.set("suite", JsonValue::str("chain"));
        v.set("lambda", JsonValue::num(l));
        v.set("index", JsonValue::integer(static_cast<std::int64_t>(j)));
        v.set("observed", JsonValue::num(rp.max_decrease));
        v.set("bound", JsonValue::num(0.0));
        v.set("seed", JsonValue::uinteger(cfg.seed));
        v.set("tuple", tuple_json(tuples[j]));
        JsonValue vals = JsonValue::array();
        for (const double x : rp.values()) vals.push(JsonValue::num(x));
        v.set("values", std::move(vals));
        add_violation(rep, std::move(v));
      }
    }
  }

  // Reference chain at the extremal point c = (1, 0, 0, 0): every link
  // is an equality there, for all lambda.
  const auto ext = proofchain::chain(lam, {cplx(1.0, 0.0), 0.0, 0.0, 0.0});
  bool saturated = true;
  for (const double v : ext.values())
    if (std::abs(v - ext.bound_final) > rel_margin(ext.bound_final))
      saturated = false;

  rep.results.set("lambda", JsonValue::num(l));
  rep.results.set("samples", JsonValue::integer(static_cast<std::int64_t>(cfg.samples)));
  rep.results.set("lemma_in_region", JsonValue::boolean(ext.lemma_in_region));
  rep.results.set("above_lambda0", JsonValue::boolean(ext.above_lambda0));
  rep.results.set("non_monotone", JsonValue::integer(non_monotone));
  rep.results.set("worst_decrease", JsonValue::num(worst_decrease));
  JsonValue extj = JsonValue::object();
  {
    const auto vals = ext.values();
    for (std::size_t i = 0; i < vals.size(); ++i)
      extj.set(std::string(proofchain::ChainReport::names[i]),
               JsonValue::num(vals[i]));
  }
  rep.results.set("extremal_chain", std::move(extj));
  rep.results.set("extremal_saturated", JsonValue::boolean(saturated));

  rep.csv = w.text();
  return emit(cfg, std::move(rep), out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"verification and extremal-search toolkit for the "
               "fifth-coefficient bound over a Schwarz-coefficient body"};
  app.name("coeffbound");
  app.require_subcommand(1);

  const auto add_output_opts = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out_path, "write the report to a file");
    sub->add_flag("--no-timestamp", cfg.no_timestamp,
                  "omit the timestamp for byte-reproducible output");
    sub->add_option("--seed", cfg.seed, "RNG seed");
  };

  CLI::App* c_verify = app.add_subcommand(
      "verify", "run the verification suites over a lambda grid");
  c_verify->add_option("--lambda", cfg.lambda_text,
                       "lambda value or start:stop:count grid");
  c_verify->add_option("--samples", cfg.samples, "samples per lambda")
      ->check(CLI::PositiveNumber);
  add_output_opts(c_verify);

  CLI::App* c_lambda0 = app.add_subcommand(
      "lambda0", "report the threshold constants and their residuals");
  add_output_opts(c_lambda0);

  CLI::App* c_sweep = app.add_subcommand(
      "sweep", "maximize |a5| across a lambda grid and tabulate the gap");
  c_sweep->add_option("--lambda", cfg.lambda_text,
                      "lambda value or start:stop:count grid");
  c_sweep->add_option("--starts", cfg.starts, "search starts")
      ->check(CLI::PositiveNumber);
  c_sweep->add_option("--budget", cfg.budget, "objective evaluations per start")
      ->check(CLI::PositiveNumber);
  add_output_opts(c_sweep);

  CLI::App* c_search = app.add_subcommand(
      "search", "maximize |a5| at a single lambda");
  c_search->add_option("--lambda", cfg.lambda_text, "lambda value")
      ->required();
  c_search->add_option("--starts", cfg.starts, "search starts")
      ->check(CLI::PositiveNumber);
  c_search->add_option("--budget", cfg.budget, "objective evaluations per start")
      ->check(CLI::PositiveNumber);
  add_output_opts(c_search);

  CLI::App* c_ps = app.add_subcommand(
      "ps-check", "maximize the cubic functional |c3 + mu c1 c2 + nu c1^3|");
  c_ps->add_option("--lambda", cfg.lambda_text,
                   "lambda whose (mu, nu) pair to test");
  auto* opt_mu = c_ps->add_option("--mu", cfg.mu, "explicit mu");
  auto* opt_nu = c_ps->add_option("--nu", cfg.nu, "explicit nu");
  c_ps->add_option("--starts", cfg.starts, "search starts")
      ->check(CLI::PositiveNumber);
  c_ps->add_option("--budget", cfg.budget, "objective evaluations per start")
      ->check(CLI::PositiveNumber);
  add_output_opts(c_ps);

  CLI::App* c_chain = app.add_subcommand(
      "chain", "evaluate the bound chain on sampled tuples at one lambda");
  c_chain->add_option("--lambda", cfg.lambda_text, "lambda value")->required();
  c_chain->add_option("--samples", cfg.samples, "sample count")
      ->check(CLI::PositiveNumber);
  add_output_opts(c_chain);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("coeffbound");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();

  // Per-command defaults for options the user did not pass.
  if (sub == c_verify && sub->count("--lambda") == 0)
    cfg.lambda_text = "0.41:1.0:5";
  if (sub == c_sweep && sub->count("--lambda") == 0)
    cfg.lambda_text = "0.45:1.0:12";
  if (sub == c_sweep) {
    if (sub->count("--starts") == 0) cfg.starts = 16;
    if (sub->count("--budget") == 0) cfg.budget = 5000;
  }
  cfg.mu_given = opt_mu->count() > 0;
  cfg.nu_given = opt_nu->count() > 0;

  try {
    if (sub != c_lambda0 && !(sub == c_ps && cfg.mu_given)) {
      if (cfg.lambda_text.empty()) {
        err << cfg.command << ": --lambda is required\n";
        return 2;
      }
      std::string perr;
      if (!parse_lambda_grid(cfg.lambda_text, cfg.lambdas, perr)) {
        err << perr << "\n";
        return 2;
      }
    }
    if ((sub == c_search || sub == c_chain ||
         (sub == c_ps && !cfg.mu_given)) &&
        cfg.lambdas.size() != 1) {
      err << cfg.command << ": expects a single lambda value\n";
      return 2;
    }
    if (sub == c_ps && cfg.mu_given != cfg.nu_given) {
      err << "ps-check: --mu and --nu must be given together\n";
      return 2;
    }

    if (sub == c_lambda0) return handle_lambda0(cfg, out, err);
    if (sub == c_verify) return handle_verify(cfg, out, err);
    if (sub == c_sweep) return handle_sweep(cfg, out, err);
    if (sub == c_search) return handle_search(cfg, out, err);
    if (sub == c_ps) return handle_ps_check(cfg, out, err);
    if (sub == c_chain) return handle_chain(cfg, out, err);
  } catch (const std::exception& e) {
    err << cfg.command << ": " << e.what() << "\n";
    return 2;
  }
  err << "unknown command\n";
  return 2;
}

}  // namespace coeffbound::cli
