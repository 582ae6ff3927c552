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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ybe4/commands.hpp"

namespace {

constexpr const char* kBraidNote =
    "Conventions: basis order |00>,|01>,|10>,|11>; R^{ab}_{ij} sits at row 2a+b, column 2i+j.\n"
    "Braid words map sigma_i to I^(i-1) (x) R (x) I^(n-i-1) and multiply left to right in word order\n"
    "(sigma_1 sigma_2 becomes (R(x)I)(I(x)R)); sigma_i^-1 uses R^-1.\n";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ybe4::ParseError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int emit(const ybe4::CommandOutput& out, const std::string& out_dir) {
  if (!out_dir.empty() && !out.files.empty()) {
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, file] : out.files) {
      std::ofstream f(std::filesystem::path(out_dir) / name, std::ios::binary);
      f << ybe4::write_matrix_file(file);
      if (!f) {
        std::cerr << "ybe4: failed to write " << name << "\n";
        return ybe4::kExitCheckFailed;
      }
    }
  }
  std::cout << out.report.dump(2) << "\n";
  std::cerr << ybe4::summarize(out.report);
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ybe4: unitary 4x4 Yang-Baxter solutions: verify, generate, classify, filter, bracket"};
  app.footer(kBraidNote);
  app.require_subcommand(1);

  ybe4::Tolerance tol;
  std::uint64_t seed = 1;
  app.add_option("--eq-tol", tol.eq_tol, "Entrywise comparison tolerance")->capture_default_str();
  app.add_option("--res-tol", tol.residual_tol, "Frobenius residual tolerance")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed")->envname("YBE4_SEED")->capture_default_str();

  std::string path, form = "braided", out_dir;
  auto* verify = app.add_subcommand("verify", "Check a matrix file against the braided or algebraic YBE");
  verify->add_option("path", path, "Matrix file")->required();
  verify->add_option("--form", form, "braided, algebraic or both")
      ->check(CLI::IsMember({"braided", "algebraic", "both"}))
      ->capture_default_str();

  ybe4::GenerateOptions gen;
  std::string params;
  auto* generate = app.add_subcommand("generate", "Emit verified members of one family");
  generate->add_option("--family", gen.family, "Family id 1..5")->required()->check(CLI::Range(1, 5));
  generate->add_option("--count", gen.count, "Number of members")->check(CLI::PositiveNumber)->capture_default_str();
  generate->add_option("--params", params,
                       "Fixed parameters, e.g. p=1,q=phase:0.5,r=-1,k=i,Q=I or Q=[a;b;c;d] (row-major)");
  generate->add_option("--out-dir", out_dir, "Directory for the member files");

  auto* classify = app.add_subcommand("classify", "Find the family of a unitary braided solution");
  classify->add_option("path", path, "Matrix file")->required();

  int samples = 1000;
  auto* filter = app.add_subcommand("filter", "Eigenvalue elimination over the candidate list");
  filter->add_option("--samples", samples, "Samples per candidate")->check(CLI::PositiveNumber)->capture_default_str();

  ybe4::BracketOptions br;
  auto* bracket = app.add_subcommand("bracket", "Unitary bracket solution for (r, g, p)");
  bracket->add_option("--r", br.r, "r in [0, 1]")->required();
  bracket->add_option("--g", br.g, "Phase angle g")->required();
  bracket->add_option("--p", br.p, "Phase angle p")->required();
  bracket->add_flag("--emit-family", br.emit_family, "Also diagonalize N and check the family-3 reading");
  bracket->add_option("--out-dir", out_dir, "Directory for N, R (and Q, M) files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ybe4::kExitParse;
  }

  if (*verify) {
    const auto vf = form == "braided" ? ybe4::VerifyForm::braided
                    : form == "algebraic" ? ybe4::VerifyForm::algebraic
                                          : ybe4::VerifyForm::both;
    return emit(ybe4::run_command("verify", [&] { return ybe4::cmd_verify(read_file(path), vf, tol); }), out_dir);
  }
  if (*generate) {
    gen.seed = seed;
    if (!params.empty()) gen.params = params;
    return emit(ybe4::cmd_generate(gen, tol), out_dir);
  }
  if (*classify) {
    return emit(ybe4::run_command("classify", [&] { return ybe4::cmd_classify(read_file(path), seed, tol); }),
                out_dir);
  }
  if (*filter) return emit(ybe4::cmd_filter(samples, seed, tol), out_dir);
  if (*bracket) return emit(ybe4::cmd_bracket(br, tol), out_dir);
  return ybe4::kExitParse;
}
