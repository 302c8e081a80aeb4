// Command-line front end. Exit codes: 0 all pass, 1 any fail, 2 usage or
// configuration error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "mge/catalog.hpp"
#include "mge/construct.hpp"
#include "mge/enumerator.hpp"
#include "mge/error.hpp"
#include "mge/morphisms.hpp"
#include "mge/ops.hpp"
#include "mge/verifier.hpp"

namespace {

using nlohmann::json;

int exit_for(mge::Status s) { return s == mge::Status::Fail ? 1 : 0; }

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw mge::ParseError("cannot write " + path);
  out << j.dump(1) << '\n';
}

int run_construct(const std::string& text) {
  auto g = mge::construct(text);
  std::cout << "expr: " << g->expr().to_string() << "\norder: " << g->order() << '\n';
  if (const auto* t = g->as_table()) {
    std::cout << "form: table\nfingerprint: " << mge::fingerprint(*t).canonical() << "\ntable_hash: " << t->table_hash()
              << '\n';
  } else {
    const auto& tw = dynamic_cast<const mge::TwistedGroup&>(*g);
    std::cout << "form: twisted product, " << tw.component_count() << " components, twist span "
              << tw.span().size() << "\nexponent: " << tw.exponent() << '\n';
    for (std::size_t i = 0; i < tw.component_count(); ++i)
      std::cout << "  component " << i << ": " << tw.component(i).group->expr().to_string() << " (order "
                << tw.component(i).group->order() << ")\n";
  }
  std::cout << "bindings:";
  for (const auto& [name, x] : g->bindings()) std::cout << ' ' << name;
  std::cout << '\n';
  return 0;
}

int run_iso(const std::string& a, const std::string& b) {
  auto ga = mge::construct_table(a), gb = mge::construct_table(b);
  if (auto m = mge::is_isomorphic(ga, gb)) {
    std::cout << "isomorphic\n" << m->to_json().dump(1) << '\n';
    return 0;
  }
  std::cout << "not isomorphic\n";
  return 1;
}

int run_embed(const std::string& h, const std::string& g, const std::vector<std::size_t>& support) {
  auto m = mge::find_embedding(mge::construct_table(h), mge::construct(g), support);
  if (!m) {
    std::cout << "no embedding\n";
    return 1;
  }
  std::cout << "embedding\n" << m->to_json().dump(1) << '\n';
  return 0;
}

int run_enumerate(std::uint32_t n, std::optional<int> tier, const std::string& out) {
  auto config = mge::enumeration_config_from_env();
  if (tier) config.tier = *tier;
  const auto& cat = mge::enumerate_groups(n, config);
  std::cout << "order " << n << ": " << cat.entries.size() << " classes (" << cat.method << ")\n";
  for (const auto& e : cat.entries) std::cout << "  " << mge::class_name(*e.group) << "  " << e.recipe << '\n';
  if (!out.empty()) write_json(out, cat.to_json());
  return 0;
}

int run_minimal(std::optional<std::uint32_t> order, std::optional<std::uint32_t> upto, std::uint64_t max) {
  if (order.has_value() == upto.has_value()) throw CLI::ValidationError("give exactly one of --order and --upto");
  auto kind = order ? mge::Collection::AllOfOrder : mge::Collection::AllUpto;
  auto res = mge::minimal_embedding_search(kind, order ? *order : *upto, max);
  if (!res.order) {
    std::cout << "exhausted(" << max << ")\n";
    return 1;
  }
  std::cout << "minimal order " << *res.order << ", " << res.groups.size() << " classes\n";
  for (const auto& g : res.groups) std::cout << "  " << mge::class_name(*g) << "  " << g->expr().to_string() << '\n';
  return 0;
}

int run_verify(const std::string& path, const std::string& json_out) {
  auto r = mge::verify_certificate(path);
  std::cout << r.text();
  if (!json_out.empty()) write_json(json_out, r.to_json());
  return exit_for(r.status());
}

int run_reproduce(const std::string& scenario, const std::string& json_out) {
  std::vector<std::string> ids = scenario == "all" ? mge::scenario_ids() : std::vector<std::string>{scenario};
  json all = json::array();
  int code = 0;
  for (const auto& id : ids) {
    auto r = mge::reproduce(id);
    std::cout << r.text();
    all.push_back(r.to_json());
    code = std::max(code, exit_for(r.status()));
  }
  if (!json_out.empty()) write_json(json_out, ids.size() == 1 ? all.front() : all);
  return code;
}

int run_certify(const std::string& tmpl, const std::string& ambient_text, std::uint32_t upto, std::size_t instances,
                std::size_t max_support, const std::string& anchor, const std::string& out) {
  auto ambient = mge::construct(ambient_text);
  mge::Certificate cert;
  cert.ambient = ambient->expr().to_string();
  cert.anchor = anchor;
  std::size_t dropped = 0;
  if (!tmpl.empty())
    for (const auto& t : mge::load_claim_templates(tmpl)) {
      auto claims = mge::instantiate_template(ambient, t, instances);
      dropped += claims.empty();
      cert.claims.insert(cert.claims.end(), claims.begin(), claims.end());
    }
  std::vector<mge::Target> targets;
  for (std::uint32_t m = 1; m <= upto; ++m) {
    auto part = mge::targets_of_order(m);
    targets.insert(targets.end(), part.begin(), part.end());
  }
  cert = mge::derive_certificate(cert, targets, max_support);
  write_json(out, cert.to_json());
  std::cout << cert.claims.size() << " claims written to " << out << " (" << dropped
            << " templates without a verifying instance)\n";
  auto covered = mge::contains_all_upto(ambient, upto, &cert);
  return exit_for(covered.status());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal group embeddings: construction, search and verification"};
  app.require_subcommand(1);

  std::string expr_a, expr_b, path, json_out, scenario, tmpl, anchor;
  std::vector<std::size_t> support;
  std::uint32_t n = 0;
  std::optional<int> tier;
  std::optional<std::uint32_t> order, upto;
  std::uint64_t max_order = 0;
  std::vector<std::uint64_t> pbound_args;
  std::optional<std::uint64_t> nbound_arg, collection_arg;
  std::uint32_t certify_upto = 0;
  std::size_t instances = 2, max_support = 2;

  auto* c_construct = app.add_subcommand("construct", "realize a group expression");
  c_construct->add_option("expr", expr_a)->required();

  auto* c_iso = app.add_subcommand("iso", "test two dense groups for isomorphism");
  c_iso->add_option("a", expr_a)->required();
  c_iso->add_option("b", expr_b)->required();

  auto* c_embed = app.add_subcommand("embed", "search for an embedding of H into G");
  c_embed->add_option("H", expr_a)->required();
  c_embed->add_option("G", expr_b)->required();
  c_embed->add_option("--support", support, "component indices of a twisted product")->delimiter(',');

  auto* c_enum = app.add_subcommand("enumerate", "groups of order n up to isomorphism");
  c_enum->add_option("n", n)->required();
  c_enum->add_option("--tier", tier)->check(CLI::Range(1, 3));
  c_enum->add_option("--out", path, "write the catalog as JSON");

  auto* c_min = app.add_subcommand("minimal", "least order containing a collection");
  c_min->add_option("--order", order);
  c_min->add_option("--upto", upto);
  c_min->add_option("--max", max_order)->required();

  auto* c_bounds = app.add_subcommand("bounds", "divisibility bounds");
  auto* o_p = c_bounds->add_option("--pbound", pbound_args)->expected(2);
  auto* o_n = c_bounds->add_option("--nbound", nbound_arg);
  auto* o_c = c_bounds->add_option("--collection", collection_arg);
  o_p->excludes(o_n)->excludes(o_c);
  o_n->excludes(o_c);

  auto* c_verify = app.add_subcommand("verify", "check an embedding certificate");
  c_verify->add_option("certificate", path)->required();
  c_verify->add_option("--json", json_out);

  auto* c_repro = app.add_subcommand("reproduce", "run a reproduction scenario ('all' for every one)");
  c_repro->add_option("scenario", scenario)->required();
  c_repro->add_option("--json", json_out);

  auto* c_cert = app.add_subcommand("certify", "build a certificate from claim templates plus derived claims");
  c_cert->add_option("--ambient", expr_a)->required();
  c_cert->add_option("--template", tmpl);
  c_cert->add_option("--upto", certify_upto, "derive claims for every group of order up to n");
  c_cert->add_option("--instances", instances, "instances per template claim");
  c_cert->add_option("--max-support", max_support);
  c_cert->add_option("--anchor", anchor);
  c_cert->add_option("--out", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_construct) return run_construct(expr_a);
    if (*c_iso) return run_iso(expr_a, expr_b);
    if (*c_embed) return run_embed(expr_a, expr_b, support);
    if (*c_enum) return run_enumerate(n, tier, path);
    if (*c_min) return run_minimal(order, upto, max_order);
    if (*c_bounds) {
      if (!pbound_args.empty()) std::cout << mge::pbound(pbound_args[0], pbound_args[1]) << '\n';
      else if (nbound_arg) std::cout << mge::nbound(*nbound_arg) << '\n';
      else if (collection_arg) std::cout << mge::collection_bound(*collection_arg) << '\n';
      else throw CLI::ValidationError("give one of --pbound, --nbound, --collection");
      return 0;
    }
    if (*c_verify) return run_verify(path, json_out);
    if (*c_repro) return run_reproduce(scenario, json_out);
    if (*c_cert) return run_certify(tmpl, expr_a, certify_upto, instances, max_support, anchor, path);
  } catch (const CLI::Error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const mge::SearchBudgetExceeded& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const mge::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 2;
}
