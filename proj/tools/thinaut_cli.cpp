// thinaut: analyze finite p-groups given by power-commutator presentations
// and certify non-inner automorphisms of order p.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 cannot-certify, 4 internal error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "thinaut/json_io.hpp"

namespace fs = std::filesystem;
using namespace thinaut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitCannotCertify = 3;
constexpr int kExitInternal = 4;

Group load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  PcPresentation P = parse_presentation(in);
  return Group(std::move(P));
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
  }
}

json analyze_json(const Group& G, int64_t lattice_bound) {
  json j;
  j["group"] = {{"name", G.name()},
                {"order", G.order()},
                {"prime", G.prime()},
                {"ngens", G.ngens()}};
  j["consistent"] = true;  // Group construction enforces it
  CentralSeries lcs = lower_central_series(G);
  CentralSeries ucs = upper_central_series(G);
  j["class"] = lcs.nilpotency_class();
  j["lower_series_orders"] = lcs.orders();
  j["upper_series_orders"] = ucs.orders();
  j["center_order"] = ucs.terms.size() > 1 ? ucs.terms[1].order() : ucs.terms[0].order();
  j["frattini_order"] = frattini(G).order();
  j["min_generators"] = min_generators(G);
  MaximalClassReport mc = is_maximal_class(G);
  j["maximal_class"] = {{"value", mc.value}, {"order_boundary", mc.order_boundary}};
  json thin;
  thin["coverty"] = to_json(is_thin_coverty(G));
  if (G.order() <= lattice_bound) thin["exact"] = to_json(is_thin_exact(G, lattice_bound));
  j["thin"] = thin;
  j["standing_assumptions"] = to_json(standing_assumptions(G, lattice_bound));
  return j;
}

json certify(const Group& G, const PipelineConfig& cfg) {
  AssumptionReport rep = standing_assumptions(G, cfg.lattice_bound);
  NonInnerCertificate cert =
      rep.pipeline_eligible ? find_noninner_order_p(G, cfg) : route_fallback(G, cfg);
  return to_json(cert);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite p-group engine over power-commutator presentations"};
  app.require_subcommand(1);

  int64_t oracle_bound = kDefaultOracleBound;
  uint64_t seed = 42;
  app.add_option("--oracle-bound", oracle_bound, "order limit for exhaustive automorphism search");
  app.add_option("--seed", seed, "seed for randomized spot checks");

  std::string in_file, cert_file, out_path, method = "exact", dir;

  auto* analyze = app.add_subcommand("analyze", "structural report for a presentation");
  analyze->add_option("file", in_file)->required();
  analyze->add_option("-o,--output", out_path);

  auto* findni = app.add_subcommand("find-noninner", "certify a non-inner automorphism of order p");
  findni->add_option("file", in_file)->required();
  findni->add_option("-o,--output", out_path);

  auto* verify = app.add_subcommand("verify", "re-verify a certificate against a presentation");
  verify->add_option("group-file", in_file)->required();
  verify->add_option("cert-file", cert_file)->required();

  auto* thin = app.add_subcommand("thin-check", "decide thinness");
  thin->add_option("file", in_file)->required();
  thin->add_option("--method", method, "exact|coverty")->check(CLI::IsMember({"exact", "coverty"}));
  thin->add_option("-o,--output", out_path);

  auto* corpus = app.add_subcommand("corpus", "analyze + certify + verify every .pcp file in a directory");
  corpus->add_option("dir", dir)->required();
  corpus->add_option("-o,--output", out_path);

  CLI11_PARSE(app, argc, argv);

  PipelineConfig cfg;
  cfg.seed = seed;
  cfg.oracle_bound = oracle_bound;

  try {
    if (analyze->parsed()) {
      Group G = load_group(in_file);
      emit(analyze_json(G, cfg.lattice_bound), out_path);
      return kExitOk;
    }

    if (findni->parsed()) {
      Group G = load_group(in_file);
      try {
        json j = certify(G, cfg);
        emit(j, out_path);
        if (!out_path.empty()) emit(j, "");  // certificate also goes to stdout
        return j["valid"].get<bool>() ? kExitOk : kExitCannotCertify;
      } catch (const CannotCertify& e) {
        std::cerr << "cannot certify: " << e.what() << "\n";
        return kExitCannotCertify;
      }
    }

    if (verify->parsed()) {
      Group G = load_group(in_file);
      std::ifstream cf(cert_file);
      if (!cf) throw ValidationError("cannot open '" + cert_file + "'");
      json cj;
      try {
        cf >> cj;
      } catch (const json::exception& e) {
        throw ValidationError(std::string("certificate is not valid JSON: ") + e.what());
      }
      NonInnerCertificate cert = certificate_from_json(cj);
      if (cert.group_name != G.name() || cert.group_order != G.order()) {
        std::cerr << "certificate does not match the group (name/order)\n";
        return kExitInput;
      }
      CertificateCheckResult res = verify_certificate(G, cert);
      emit(to_json(res), out_path);
      std::cerr << (res.all_passed() ? "certificate verified\n" : "certificate REJECTED\n");
      return res.all_passed() ? kExitOk : kExitVerifyFail;
    }

    if (thin->parsed()) {
      Group G = load_group(in_file);
      emit(to_json(is_thin(G, method, cfg.lattice_bound)), out_path);
      return kExitOk;
    }

    if (corpus->parsed()) {
      std::vector<fs::path> files;
      if (!fs::is_directory(dir)) throw ValidationError("'" + dir + "' is not a directory");
      for (const auto& ent : fs::directory_iterator(dir))
        if (ent.path().extension() == ".pcp") files.push_back(ent.path());
      std::sort(files.begin(), files.end());
      json rows = json::array();
      int certified = 0, verified = 0, errors = 0;
      for (const auto& f : files) {
        json row;
        row["file"] = f.filename().string();
        try {
          Group G = load_group(f.string());
          row["group"] = G.name();
          row["order"] = G.order();
          CentralSeries lcs = lower_central_series(G);
          row["class"] = lcs.nilpotency_class();
          row["thin"] = is_thin_coverty(G).is_thin;
          json cj = certify(G, cfg);
          row["method"] = cj["method"];
          row["certificate_valid"] = cj["valid"];
          if (cj["valid"].get<bool>()) ++certified;
          NonInnerCertificate cert = certificate_from_json(cj);
          bool ok = verify_certificate(G, cert).all_passed();
          row["verified"] = ok;
          if (ok) ++verified;
          row["error"] = nullptr;
        } catch (const std::exception& e) {
          row["error"] = e.what();
          ++errors;
        }
        rows.push_back(row);
      }
      json j;
      j["rows"] = rows;
      j["summary"] = {{"total", files.size()},
                      {"certified", certified},
                      {"verified", verified},
                      {"errors", errors}};
      emit(j, out_path);
      return certified == verified ? kExitOk : kExitVerifyFail;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ConsistencyError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BoundExceeded& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CannotCertify& e) {
    std::cerr << "cannot certify: " << e.what() << "\n";
    return kExitCannotCertify;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
