// Copyright 2026 The ybe4 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The ybe4 command layer. Each command returns a JSON report plus an exit
// code; the executable only parses flags and moves bytes.

#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ybe4/bracket.hpp"
#include "ybe4/classify.hpp"
#include "ybe4/entangle.hpp"
#include "ybe4/errors.hpp"
#include "ybe4/families.hpp"
#include "ybe4/io.hpp"
#include "ybe4/linalg.hpp"
#include "ybe4/ybe.hpp"

namespace ybe4 {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitParse = 2,
  kExitDimension = 3,
  kExitConstraint = 4,
  kExitNotSolution = 5,
  kExitDegenerate = 6,
};

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const DimensionError*>(&e)) return kExitDimension;
  if (dynamic_cast<const ConstraintViolation*>(&e)) return kExitConstraint;
  if (dynamic_cast<const PreconditionFailed*>(&e)) return kExitConstraint;
  if (dynamic_cast<const NotASolution*>(&e)) return kExitNotSolution;
  if (dynamic_cast<const NotUnitary*>(&e)) return kExitNotSolution;
  if (dynamic_cast<const DegenerateParameter*>(&e)) return kExitDegenerate;
  return kExitCheckFailed;
}

inline const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
  if (dynamic_cast<const ConstraintViolation*>(&e)) return "ConstraintViolation";
  if (dynamic_cast<const PreconditionFailed*>(&e)) return "PreconditionFailed";
  if (dynamic_cast<const NotASolution*>(&e)) return "NotASolution";
  if (dynamic_cast<const NotUnitary*>(&e)) return "NotUnitary";
  if (dynamic_cast<const DegenerateParameter*>(&e)) return "DegenerateParameter";
  if (dynamic_cast<const SingularMatrix*>(&e)) return "SingularMatrix";
  if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
  if (dynamic_cast<const SizeExceeded*>(&e)) return "SizeExceeded";
  return "Error";
}

struct CommandOutput {
  Json report;
  int exit_code = kExitPass;
  std::vector<std::pair<std::string, MatrixFile>> files;  // file name, content
};

/// Accumulates the fields every report shares.
class Report {
 public:
  Report(std::string command, std::string digest, const Tolerance& tol, std::optional<std::uint64_t> seed) {
    json_ = {{"command", std::move(command)},
             {"version", kFileSchemaVersion},
             {"tool_version", kToolVersion},
             {"input_digest", std::move(digest)},
             {"tolerances",
              {{"eq_tol", tol.eq_tol}, {"residual_tol", tol.residual_tol}, {"singular_tol", tol.singular_tol}}},
             {"checks", Json::array()},
             {"result", Json::object()}};
    json_["seed"] = seed ? Json(*seed) : Json(nullptr);
  }

  void check(const std::string& name, double value, double threshold, bool pass) {
    json_["checks"].push_back({{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", pass}});
    all_pass_ = all_pass_ && pass;
  }

  /// Passes when value ≤ threshold; NaN fails.
  void check_le(const std::string& name, double value, double threshold) {
    check(name, value, threshold, value <= threshold);
  }

  Json& result() { return json_["result"]; }

  CommandOutput finish(std::vector<std::pair<std::string, MatrixFile>> files = {}) {
    CommandOutput out;
    out.exit_code = all_pass_ ? kExitPass : kExitCheckFailed;
    json_["exit_code"] = out.exit_code;
    out.report = std::move(json_);
    out.files = std::move(files);
    return out;
  }

 private:
  Json json_;
  bool all_pass_ = true;
};

inline CommandOutput error_output(const std::string& command, const std::exception& e) {
  CommandOutput out;
  out.exit_code = exit_code_for(e);
  out.report = {{"command", command},
                {"version", kFileSchemaVersion},
                {"tool_version", kToolVersion},
                {"error", {{"type", error_kind(e)}, {"message", e.what()}}},
                {"exit_code", out.exit_code}};
  return out;
}

/// Runs `body`, turning library errors into an error report.
template <typename F>
CommandOutput run_command(const std::string& command, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return error_output(command, e);
  }
}

/// One line per check, then the verdict; meant for stderr.
inline std::string summarize(const Json& report) {
  std::ostringstream s;
  s << "ybe4 " << report.value("command", std::string("?")) << "\n";
  if (report.contains("error")) {
    s << "  error: " << report["error"]["type"].get<std::string>() << ": "
      << report["error"]["message"].get<std::string>() << "\n";
  }
  if (report.contains("checks")) {
    for (const auto& c : report["checks"]) {
      char line[256];
      const double value = c["value"].is_number() ? c["value"].get<double>() : std::numeric_limits<double>::infinity();
      std::snprintf(line, sizeof line, "  %-4s %-40s %.3e (threshold %.1e)\n", c["pass"].get<bool>() ? "ok" : "FAIL",
                    c["name"].get<std::string>().c_str(), value, c["threshold"].get<double>());
      s << line;
    }
  }
  s << "  exit " << report.value("exit_code", -1) << "\n";
  return s.str();
}

// ---------------------------------------------------------------- verify

enum class VerifyForm { braided, algebraic, both };

inline CommandOutput cmd_verify(std::string_view text, VerifyForm form, const Tolerance& tol = {}) {
  return run_command("verify", [&] {
    const MatrixFile mf = parse_matrix_file(text);
    if (mf.matrix.dim() != 4) throw DimensionError("verify: expected dim 4, got " + std::to_string(mf.matrix.dim()));
    Report rep("verify", fnv1a_digest(text), tol, std::nullopt);
    const auto emb = ybe_residuals(mf.matrix, ResidualMethod::embedding);
    const auto con = ybe_residuals(mf.matrix, ResidualMethod::contraction);
    if (form != VerifyForm::algebraic) {
      rep.check_le("braided.embedding", emb.braided, tol.residual_tol);
      rep.check_le("braided.contraction", con.braided, tol.residual_tol);
    }
    if (form != VerifyForm::braided) {
      rep.check_le("algebraic.embedding", emb.algebraic, tol.residual_tol);
      rep.check_le("algebraic.contraction", con.algebraic, tol.residual_tol);
    }
    auto& r = rep.result();
    r["form"] = form == VerifyForm::both ? "both" : (form == VerifyForm::braided ? "braided" : "algebraic");
    r["residuals"] = {{"embedding", {{"braided", emb.braided}, {"algebraic", emb.algebraic}}},
                      {"contraction", {{"braided", con.braided}, {"algebraic", con.algebraic}}}};
    r["unitarity_defect"] = unitarity_defect(mf.matrix);
    if (mf.name) r["name"] = *mf.name;
    return rep.finish();
  });
}

// ---------------------------------------------------------------- generate

/// Parses a complex literal: "1", "-0.5", "2i", "-i", "1+2i", "3e-1-4i",
/// "phase:0.3" (e^{0.3i}) or "polar:2:0.3" (2e^{0.3i}).
inline Complex parse_complex(std::string_view raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s.push_back(c);
  auto to_double = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + t + "' in '" + std::string(raw) + "'");
    }
    if (used != t.size()) throw ParseError("bad number '" + t + "' in '" + std::string(raw) + "'");
    return v;
  };
  if (s.rfind("phase:", 0) == 0) return std::polar(1.0, to_double(s.substr(6)));
  if (s.rfind("polar:", 0) == 0) {
    const auto colon = s.find(':', 6);
    if (colon == std::string::npos) throw ParseError("polar literal needs polar:modulus:angle");
    return std::polar(to_double(s.substr(6, colon - 6)), to_double(s.substr(colon + 1)));
  }
  if (s.empty()) throw ParseError("empty complex literal");
  if (s.back() != 'i') return to_double(s);
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(s)};
  return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

struct ParamOverrides {
  std::optional<Complex> p, q, r, k;
  std::optional<Matrix> Q;
};

/// "p=1,q=phase:0.2,k=i,Q=[a;b;c;d]" (Q row-major) or "Q=I".
inline ParamOverrides parse_params(std::string_view text) {
  ParamOverrides out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("params: expected key=value, got '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    const std::string_view value = item.substr(eq + 1);
    if (key == "Q") {
      if (value == "I") {
        out.Q = Matrix::identity(2);
        continue;
      }
      if (value.size() < 2 || value.front() != '[' || value.back() != ']')
        throw ParseError("params: Q must be I or [a;b;c;d]");
      std::vector<Complex> entries;
      std::string_view body = value.substr(1, value.size() - 2);
      std::size_t p0 = 0;
      while (p0 <= body.size()) {
        const std::size_t semi = body.find(';', p0);
        entries.push_back(
            parse_complex(body.substr(p0, semi == std::string_view::npos ? std::string_view::npos : semi - p0)));
        p0 = semi == std::string_view::npos ? body.size() + 1 : semi + 1;
      }
      if (entries.size() != 4) throw ParseError("params: Q needs exactly four entries");
      out.Q = Matrix{{entries[0], entries[1]}, {entries[2], entries[3]}};
    } else if (key == "p") {
      out.p = parse_complex(value);
    } else if (key == "q") {
      out.q = parse_complex(value);
    } else if (key == "r") {
      out.r = parse_complex(value);
    } else if (key == "k") {
      out.k = parse_complex(value);
    } else {
      throw ParseError("params: unknown key '" + key + "'");
    }
  }
  return out;
}

struct GenerateOptions {
  int family = 1;
  std::uint64_t seed = 1;
  int count = 1;
  std::optional<std::string> params;
};

inline Json spec_to_json(const FamilySpec& s) {
  Json j{{"family", to_string(s.family)}, {"k", complex_to_json(s.phase)}, {"Q", matrix_to_json(s.Q)}};
  switch (s.family) {
    case Family::F1:
      j["p"] = complex_to_json(s.p);
      j["q"] = complex_to_json(s.q);
      j["r"] = complex_to_json(s.r);
      break;
    case Family::F2:
    case Family::F3:
      j["p"] = complex_to_json(s.p);
      j["q"] = complex_to_json(s.q);
      j["pq"] = complex_to_json(s.p * s.q);
      break;
    default:
      break;
  }
  return j;
}

/// Random valid members; explicit params replace the sampled values and
/// default k to 1. Family-2 p, q always follow from Q.
inline CommandOutput cmd_generate(const GenerateOptions& opt, const Tolerance& tol = {}) {
  return run_command("generate", [&] {
    const auto family = family_from_int(opt.family);
    if (!family) throw ParseError("generate: family must be 1..5");
    if (opt.count < 1) throw ParseError("generate: count must be >= 1");
    std::optional<ParamOverrides> ov;
    if (opt.params) ov = parse_params(*opt.params);
    if (ov && *family == Family::F2 && (ov->p || ov->q))
      throw ConstraintViolation("generate: family 2 derives p and q from Q; they cannot be given");

    const std::string canon = "family=" + std::to_string(opt.family) + ";count=" + std::to_string(opt.count) +
                              ";params=" + opt.params.value_or("");
    Report rep("generate", fnv1a_digest(canon), tol, opt.seed);
    Rng rng = make_rng(opt.seed, static_cast<std::uint64_t>(opt.family));
    std::vector<std::pair<std::string, MatrixFile>> files;
    Json members = Json::array();
    for (int i = 0; i < opt.count; ++i) {
      FamilySpec spec = random_family_spec(*family, rng);
      if (ov) {
        spec.phase = ov->k.value_or(Complex{1.0});
        if (ov->Q) {
          spec.Q = *ov->Q;
          if (*family == Family::F3 && !(ov->p && ov->q) && std::abs(spec.Q(0, 0)) > 0.0) {
            const double ratio = std::norm(spec.Q(1, 1)) / std::norm(spec.Q(0, 0));
            spec.p = ratio * random_phase(rng);
            spec.q = random_phase(rng) / ratio;
          }
        }
        if (ov->p) spec.p = *ov->p;
        if (ov->q) spec.q = *ov->q;
        if (ov->r) spec.r = *ov->r;
        if (*family == Family::F2) std::tie(spec.p, spec.q) = family2_pq(spec.Q);
      }
      if (auto v = validate_params(spec, tol); !v.empty()) throw ConstraintViolation("generate: " + describe(v));
      const Matrix m = family_member(spec, tol);
      char name[32];
      std::snprintf(name, sizeof name, "F%d_%03d", opt.family, i);
      rep.check_le(std::string(name) + ".unitarity_defect", unitarity_defect(m), tol.residual_tol * 4.0);
      rep.check_le(std::string(name) + ".braided_residual", braided_residual(m), tol.residual_tol);
      Json mj = spec_to_json(spec);
      mj["name"] = name;
      mj["rows"] = matrix_to_json(m);
      members.push_back(std::move(mj));
      files.emplace_back(std::string(name) + ".json", MatrixFile{m, std::string(name), to_string(*family)});
    }
    rep.result()["family"] = to_string(*family);
    rep.result()["count"] = opt.count;
    rep.result()["members"] = std::move(members);
    return rep.finish(std::move(files));
  });
}

// ---------------------------------------------------------------- classify

inline Json state_to_json(const TwoQubitState& s) {
  return Json::array(
      {complex_to_json(s.alpha), complex_to_json(s.beta), complex_to_json(s.gamma), complex_to_json(s.delta)});
}

inline CommandOutput cmd_classify(std::string_view text, std::uint64_t seed, const Tolerance& tol = {}) {
  return run_command("classify", [&] {
    const MatrixFile mf = parse_matrix_file(text);
    if (mf.matrix.dim() != 4)
      throw DimensionError("classify: expected dim 4, got " + std::to_string(mf.matrix.dim()));
    Report rep("classify", fnv1a_digest(text), tol, seed);
    ClassifyOptions opt;
    opt.seed = seed;
    const auto res = classify(mf.matrix, opt, tol);

    auto& r = rep.result();
    r["family"] = res.family ? to_string(*res.family) : "Unknown";
    if (res.certificate) {
      const auto& c = *res.certificate;
      r["certificate"] = {{"k", complex_to_json(c.phase)},
                          {"Q", matrix_to_json(c.Q)},
                          {"p", complex_to_json(c.p)},
                          {"q", complex_to_json(c.q)},
                          {"r", complex_to_json(c.r)},
                          {"residual", c.residual}};
    } else {
      r["certificate"] = nullptr;
    }
    Json ev = Json::array();
    for (const auto& l : res.evidence.eigenvalues) ev.push_back(complex_to_json(l));
    r["eigenvalues"] = std::move(ev);
    Json attempts = Json::array();
    for (const auto& a : res.evidence.attempts)
      attempts.push_back({{"family", to_string(a.family)},
                          {"prefilter_pass", a.prefilter_pass},
                          {"best_residual", a.best_residual}});
    r["attempts"] = std::move(attempts);
    const auto& ent = res.evidence.entangling;
    r["entangling"] = {{"verdict", ent.entangling},
                       {"schmidt_ratio", ent.local_ratio},
                       {"schmidt_ratio_swapped", ent.swap_ratio}};
    if (ent.witness) {
      r["entangling"]["witness_input"] = state_to_json(*ent.witness);
      r["entangling"]["witness_output"] = state_to_json(*ent.output);
      r["entangling"]["output_determinant"] = ent.witness_determinant;
    }
    rep.check_le("certificate.residual",
                 res.certificate ? res.certificate->residual : std::numeric_limits<double>::infinity(),
                 opt.certificate_tol);
    return rep.finish();
  });
}

// ---------------------------------------------------------------- filter

inline CommandOutput cmd_filter(int samples, std::uint64_t seed, const Tolerance& tol = {}) {
  return run_command("filter", [&] {
    if (samples < 1) throw ParseError("filter: samples must be >= 1");
    Report rep("filter", fnv1a_digest("samples=" + std::to_string(samples)), tol, seed);
    const auto report = run_elimination(samples, seed, tol);
    Json table = Json::array();
    for (const auto& c : report.candidates) {
      table.push_back({{"name", c.name},
                       {"samples", c.samples},
                       {"passes", c.passes},
                       {"singular_redraws", c.singular_redraws},
                       {"pass_fraction", c.pass_fraction},
                       {"verdict", c.passes_filter ? "pass" : "fail"}});
      const bool expect_pass = c.name != "R11";
      rep.check(c.name + ".verdict", c.pass_fraction, 0.5, c.passes_filter == expect_pass);
      if (!expect_pass) rep.check_le(c.name + ".pass_fraction", c.pass_fraction, 0.01);
    }
    rep.result()["candidates"] = std::move(table);

    // R11 at p = 1, q = 2 has eigenvalues {2, -8, 8, 2}.
    const auto& r11 = hietarinta_candidates()[3];
    const auto spot = eigenvalue_filter(r11.build({1.0, 1.0, 2.0, 0.0}), tol);
    const auto [lo, hi] = std::minmax_element(spot.moduli.begin(), spot.moduli.end());
    rep.result()["spot_R11_p1_q2"] = {{"moduli", spot.moduli}, {"ratio", *hi / *lo}, {"pass", spot.pass}};
    rep.check("R11(p=1,q=2).modulus_ratio", *hi / *lo, 4.0, std::abs(*hi / *lo - 4.0) <= 1e-9 && !spot.pass);
    return rep.finish();
  });
}

// ---------------------------------------------------------------- bracket

struct BracketOptions {
  double r = 1.0;
  double g = 0.0;
  double p = 0.0;
  bool emit_family = false;
};

inline CommandOutput cmd_bracket(const BracketOptions& opt, const Tolerance& tol = {}) {
  return run_command("bracket", [&] {
    char canon[128];
    std::snprintf(canon, sizeof canon, "r=%.17g;g=%.17g;p=%.17g;family=%d", opt.r, opt.g, opt.p, opt.emit_family);
    Report rep("bracket", fnv1a_digest(canon), tol, std::nullopt);
    const BracketParams bp{opt.r, opt.g, opt.p, kI};
    const auto ub = unitary_bracket_family(bp, tol);
    const auto sol = bracket_solution(bp.alpha, ub.N, tol);

    rep.check_le("conj(N)N - I", frobenius_norm(conjugate(ub.N) * ub.N - Matrix::identity(2)), 1e-12);
    rep.check_le("U^2 - delta U", sol.tl_residual, 1e-10);
    rep.check("delta = -(alpha^2 + alpha^-2)", std::abs(sol.skein.delta - sol.required_delta), 1e-9,
              sol.delta_consistent);
    rep.check_le("R.unitarity_defect", unitarity_defect(sol.R), 1e-10);
    rep.check_le("R.braided_residual", braided_residual(sol.R), 1e-9);

    auto& r = rep.result();
    r["params"] = {{"r", opt.r}, {"g", opt.g}, {"p", opt.p}, {"alpha", complex_to_json(bp.alpha)}};
    r["N"] = matrix_to_json(ub.N);
    r["R"] = matrix_to_json(sol.R);
    r["delta"] = complex_to_json(sol.skein.delta);
    std::vector<std::pair<std::string, MatrixFile>> files{{"N.json", {ub.N, std::string("N"), std::nullopt}},
                                                          {"R.json", {sol.R, std::string("R"), std::nullopt}}};

    if (opt.emit_family) {
      const auto red = bracket_to_family(bp, tol);
      rep.check_le("QNQ^t.offdiagonal", red.offdiag_residual, 1e-10);
      rep.check_le("family3.|p| = |d|^2/|a|^2", red.f3_p_deviation, kBracketFamilyTol);
      rep.check_le("family3.|q| = |a|^2/|d|^2", red.f3_q_deviation, kBracketFamilyTol);
      rep.check_le("member.reconstruction", red.reconstruction_residual, 1e-9);
      r["family"] = {{"tag", red.family ? to_string(*red.family) : "none"},
                     {"Q", matrix_to_json(red.Q)},
                     {"M", matrix_to_json(red.M)},
                     {"R_M", matrix_to_json(red.R_M)},
                     {"k", complex_to_json(red.k)},
                     {"p", complex_to_json(red.p)},
                     {"q", complex_to_json(red.q)},
                     {"column_defect", red.column_defect},
                     {"conjugator", matrix_to_json(red.conjugator)},
                     {"family2_closed_form_deviation", red.f2_closed_form_deviation}};
      files.push_back({"Q.json", {red.Q, std::string("Q"), std::nullopt}});
      files.push_back({"M.json", {red.M, std::string("M"), std::nullopt}});
    }
    return rep.finish(std::move(files));
  });
}

}  // namespace ybe4
