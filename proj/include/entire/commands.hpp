#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "entire/certificate.hpp"
#include "entire/errors.hpp"
#include "entire/json_io.hpp"
#include "entire/numeric.hpp"
#include "entire/text.hpp"
#include "entire/verdict.hpp"

// Subcommands of the `entire` tool, kept free of I/O so they can be tested
// directly. Each takes file contents and returns the exit code and stdout
// payload.

namespace entire::cli {

inline constexpr const char* kToolName = "entire";
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,     // parse, schema or I/O problem
  kInternalError = 2,  // an internal invariant broke
  kNegative = 3,       // not_entire from check, failed verification from verify
};

struct CommandResult {
  int exit_code = kOk;
  std::string output;  // goes to stdout
  std::string error;   // goes to stderr
};

using json_io::Json;
using numeric::Complex;

/// Maps exceptions onto exit codes.
inline CommandResult guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const InternalError& e) {
    return {kInternalError, "", std::string("internal error: ") + e.what()};
  } catch (const ParseError& e) {
    return {kInputError, "", std::string("parse error: ") + e.what()};
  } catch (const json_io::SchemaError& e) {
    return {kInputError, "", std::string("schema error: ") + e.what()};
  } catch (const nlohmann::json::exception& e) {
    return {kInputError, "", std::string("json error: ") + e.what()};
  } catch (const InvalidCertificate& e) {
    return {kInputError, "", std::string("invalid certificate: ") + e.what()};
  } catch (const std::invalid_argument& e) {
    return {kInputError, "", std::string("invalid input: ") + e.what()};
  } catch (const std::exception& e) {
    return {kInternalError, "", std::string("error: ") + e.what()};
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json document_header(std::string_view input) {
  return Json{{"tool", kToolName}, {"version", kVersion}, {"input_hash", json_io::input_hash(input)}};
}

/// Accepts either a bare certificate or a check document carrying one.
inline Certificate certificate_from_text(std::string_view text) {
  Json j = Json::parse(text);
  if (j.is_object() && j.contains("certificate")) return json_io::certificate_from_json(j.at("certificate"));
  return json_io::certificate_from_json(j);
}

inline CommandResult check(std::string_view system_text) {
  return guarded([&] {
    OdeSystem sys = parse_system(system_text);
    Verdict verdict = decide(sys);
    Json doc = document_header(system_text);
    doc["n"] = sys.dimension();
    doc["volume_preserving"] = is_volume_preserving(sys);
    if (auto* entire = std::get_if<Entire>(&verdict)) {
      VerifyReport report = verify(entire->certificate, sys);
      if (!report.passed()) throw InternalError("emitted certificate fails verification: " + report.detail);
      doc["verdict"] = "entire";
      doc["certificate"] = json_io::to_json(entire->certificate);
      return CommandResult{kOk, dump(doc), ""};
    }
    doc["verdict"] = "not_entire";
    doc["witness"] = json_io::to_json(std::get<NotEntire>(verdict).witness);
    return CommandResult{kNegative, dump(doc), ""};
  });
}

/// System text for the certificate; with `as_json`, a JSON document holding
/// the same text and each component separately.
inline CommandResult expand_certificate(std::string_view cert_text, bool as_json = false) {
  return guarded([&] {
    OdeSystem sys = expand(certificate_from_text(cert_text));
    std::string text = format_system(sys);
    if (!as_json) return CommandResult{kOk, text, ""};
    Json rhs = Json::array();
    for (const auto& p : sys.rhs()) rhs.push_back(to_string(p));
    Json doc = document_header(cert_text);
    doc["n"] = sys.dimension();
    doc["rhs"] = rhs;
    doc["system"] = text;
    return CommandResult{kOk, dump(doc), ""};
  });
}

inline CommandResult verify_certificate(std::string_view cert_text, std::string_view system_text) {
  return guarded([&] {
    Certificate cert = certificate_from_text(cert_text);
    OdeSystem sys = parse_system(system_text);
    VerifyReport report = verify(cert, sys);
    Json doc{{"shapes_ok", report.shapes_ok},
             {"kernel_ok", report.kernel_ok},
             {"reconstruction_ok", report.reconstruction_ok},
             {"passed", report.passed()}};
    if (!report.detail.empty()) doc["detail"] = report.detail;
    return CommandResult{report.passed() ? kOk : kNegative, dump(doc), ""};
  });
}

inline CommandResult diverge(std::string_view system_text) {
  return guarded([&] {
    OdeSystem sys = parse_system(system_text);
    LaurentPoly div = log_divergence(sys);
    Json doc{{"divergence", to_string(div)}, {"volume_preserving", div.is_zero()}};
    return CommandResult{kOk, doc.dump() + "\n", ""};
  });
}

/// Parses "2", "-1.5", "1+i", "0.5-2i", "3i", "-i".
inline Complex parse_complex(std::string_view token) {
  std::string s;
  for (char c : token)
    if (c != ' ' && c != '\t') s += c;
  if (s.empty()) throw std::invalid_argument("empty complex number");
  auto real = [&s](const std::string& part) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != part.size()) throw std::invalid_argument("malformed complex number '" + s + "'");
    return v;
  };
  if (s.back() != 'i') return {real(s), 0.0};
  std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_part = split == std::string::npos ? body : body.substr(split);
  double im = (im_part.empty() || im_part == "+") ? 1.0 : im_part == "-" ? -1.0 : real(im_part);
  return {re_part.empty() ? 0.0 : real(re_part), im};
}

inline std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_complex(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

inline Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline std::string event_name(numeric::EventKind k) {
  return k == numeric::EventKind::kBlowup ? "blowup" : "near_zero";
}

struct SimulateOptions {
  double radius = 5.0;
  std::size_t rays = 16;
  std::vector<Complex> initial;  // empty: all ones
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
};

/// Numeric cross-check of the symbolic verdict. Disagreement is reported in
/// "diagnostic"; the exit code does not depend on it.
inline CommandResult simulate(std::string_view system_text, const SimulateOptions& opt) {
  return guarded([&] {
    OdeSystem sys = parse_system(system_text);
    std::vector<Complex> init = opt.initial.empty() ? std::vector<Complex>(sys.dimension(), 1.0) : opt.initial;
    if (init.size() != sys.dimension())
      throw std::invalid_argument("--init has " + std::to_string(init.size()) + " values for a " +
                                  std::to_string(sys.dimension()) + "-dimensional system");
    numeric::ScanOptions scan_opt{opt.rel_tol, opt.abs_tol, 64};
    numeric::ScanResult scan = numeric::disc_scan(sys, init, opt.radius, opt.rays, scan_opt);
    bool symbolic_entire = is_entire(decide(sys));

    Json rays = Json::array();
    for (std::size_t j = 0; j < scan.rays.size(); ++j) {
      const auto& r = scan.rays[j];
      Json ray{{"angle", scan.angles[j]}};
      if (r.event) {
        ray["outcome"] = event_name(r.event->kind);
        ray["t"] = r.event->t;
        ray["component"] = r.event->component + 1;
        if (r.event->step_underflow) ray["step_underflow"] = true;
      } else {
        ray["outcome"] = "completed";
        ray["t"] = opt.radius;
      }
      Json last = Json::array();
      for (Complex z : r.final_state()) last.push_back(complex_json(z));
      ray["last_sample"] = last;
      rays.push_back(ray);
    }
    std::vector<bool> zero_free(sys.dimension(), true);
    for (const auto& r : scan.rays)
      if (r.event && r.event->kind == numeric::EventKind::kNearZero) zero_free[r.event->component] = false;

    std::string diagnostic;
    if (symbolic_entire && scan.any_event())
      diagnostic = "numeric event on a system judged entire (numerics never override the verdict)";
    else if (!symbolic_entire && !scan.any_event())
      diagnostic = "no numeric witness found for this initial condition and radius";
    else
      diagnostic = "consistent";

    Json init_json = Json::array();
    for (Complex z : init) init_json.push_back(complex_json(z));
    Json doc = document_header(system_text);
    doc["verdict"] = symbolic_entire ? "entire" : "not_entire";
    doc["radius"] = opt.radius;
    doc["initial"] = init_json;
    doc["rays"] = rays;
    doc["min_modulus"] = scan.min_modulus;
    doc["max_modulus"] = scan.max_modulus;
    doc["zero_free"] = zero_free;
    doc["diagnostic"] = diagnostic;
    return CommandResult{kOk, dump(doc), ""};
  });
}

struct NevanlinnaOptions {
  std::vector<double> radii{1.0};
  std::size_t samples = 256;
  std::vector<Complex> initial;  // empty: all ones
};

/// m(r, z_i) for each solution component, from the values z_i(r·e^{iθ_j})
/// at the ends of `samples` equally spaced rays.
inline CommandResult nevanlinna(std::string_view system_text, const NevanlinnaOptions& opt) {
  return guarded([&] {
    OdeSystem sys = parse_system(system_text);
    if (opt.samples < 8) throw std::invalid_argument("--samples must be at least 8");
    std::vector<Complex> init = opt.initial.empty() ? std::vector<Complex>(sys.dimension(), 1.0) : opt.initial;
    if (init.size() != sys.dimension()) throw std::invalid_argument("--init has the wrong number of values");
    Json estimates = Json::array();
    for (double r : opt.radii) {
      if (!(r > 0)) throw std::invalid_argument("radii must be positive");
      numeric::ScanResult scan = numeric::disc_scan(sys, init, r, opt.samples, {1e-10, 1e-12, 2});
      Json entry{{"r", r}};
      if (auto ev = scan.first_event()) {
        entry["m"] = nullptr;
        entry["event"] = Json{{"outcome", event_name(ev->kind)}, {"t", ev->t}, {"component", ev->component + 1}};
      } else {
        Json m = Json::array();
        for (std::size_t i = 0; i < sys.dimension(); ++i) {
          std::vector<Complex> values;
          for (const auto& ray : scan.rays) values.push_back(ray.final_state()[i]);
          m.push_back(numeric::estimate_m(values, r));
        }
        entry["m"] = m;
      }
      estimates.push_back(entry);
    }
    Json doc = document_header(system_text);
    doc["samples"] = opt.samples;
    doc["estimates"] = estimates;
    return CommandResult{kOk, dump(doc), ""};
  });
}

/// A random certificate and the system it expands to.
inline CommandResult random_certificate_command(std::uint64_t seed, const RandomCertificateOptions& opt) {
  return guarded([&] {
    Certificate cert = random_certificate(seed, opt);
    Json doc{{"tool", kToolName}, {"version", kVersion}, {"seed", seed}};
    doc["certificate"] = json_io::to_json(cert);
    doc["system"] = format_system(expand(cert));
    return CommandResult{kOk, dump(doc), ""};
  });
}

}  // namespace entire::cli
