#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mge/group.hpp"
#include "mge/morphisms.hpp"

namespace mge {

struct Claim {
  std::string target;
  std::vector<std::string> generators;  // words in the ambient group
  std::string source = "paper";         // "paper" | "derived"
};

struct Certificate {
  std::string ambient;
  std::string anchor;
  std::vector<Claim> claims;

  static Certificate from_json(const nlohmann::json& j);  // throws ParseError
  static Certificate load(const std::string& path);
  nlohmann::json to_json() const;
};

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

struct ReportItem {
  std::string id;
  Status status = Status::Pass;
  std::string detail;
  std::vector<nlohmann::json> witnesses;  // serialized morphisms
};

struct Report {
  std::string scenario;
  std::vector<ReportItem> items;
  double seconds = 0;

  // Skipped when every item is skipped; otherwise pass iff nothing failed.
  Status status() const;
  ReportItem& add(std::string id, Status status, std::string detail = {});
  void append(const Report& other, const std::string& prefix = {});
  // Timing is included only when MGE_REPORT_TIMING=1 so that reports are
  // byte-identical across runs.
  nlohmann::json to_json() const;
  std::string text() const;
};

// Short isomorphism-class name: abelian invariants or exponent.
std::string class_name(const TableGroup& g);

// Checks one claim inside a realized ambient group.
ReportItem verify_claim(const GroupPtr& ambient, const Claim& claim);
Report verify_certificate(const Certificate& cert);
Report verify_certificate(const std::string& path);

// Targets: the fixed group list for n <= 15, the enumerated catalog otherwise.
struct Target {
  std::string id;
  TablePtr group;
};
std::vector<Target> targets_of_order(std::uint32_t n);

// Dense ambients are searched; structured ambients need a certificate claim
// for every target (IncompleteCertificates otherwise). With stop_on_fail the
// remaining targets are not examined after the first failure.
Report contains_all_of_order(const GroupPtr& g, std::uint32_t n, const Certificate* certs = nullptr,
                             bool stop_on_fail = false);
Report contains_all_upto(const GroupPtr& g, std::uint32_t n, const Certificate* certs = nullptr,
                         bool stop_on_fail = false);

// Adds derived claims for every target the certificate does not cover yet.
// Structured ambients are searched on supports of up to max_support
// components, smallest pool first; dense ambients are searched directly.
Certificate derive_certificate(const Certificate& base, const std::vector<Target>& targets,
                               std::size_t max_support = 2);

// A claim whose words may contain "{theta}", replaced by a product of the
// listed twist words (the empty product unless nontrivial is set).
struct ClaimTemplate {
  std::string target;
  std::vector<std::string> generators;
  std::vector<std::string> theta;
  bool nontrivial = false;
};
std::vector<ClaimTemplate> load_claim_templates(const std::string& path);
// Verifying instances in order of increasing twist weight; at most
// max_instances, always including the first and last that verify.
std::vector<Claim> instantiate_template(const GroupPtr& ambient, const ClaimTemplate& t, std::size_t max_instances);

enum class Collection { AllOfOrder, AllUpto };
struct MinimalResult {
  std::optional<std::uint64_t> order;  // nullopt: exhausted
  std::vector<TablePtr> groups;
  std::vector<std::uint64_t> eliminated;  // candidate orders with no passing group
  Report report;
};
// Throws TierLimitExceeded when a candidate order is outside the tier.
MinimalResult minimal_embedding_search(Collection kind, std::uint32_t n, std::uint64_t max_order);

const std::vector<std::string>& scenario_ids();
// Tier-gated scenarios report skipped. Throws UnknownLabel for unknown ids.
Report reproduce(const std::string& scenario);

// Directory holding the shipped certificate files (MGE_CERT_DIR or the
// source tree default).
std::string certificate_dir();
// Shipped certificate for a family label such as "BIG12_SOL:theta5".
std::string family_certificate_path(const std::string& label);

// Rebuilds a serialized witness and checks it; used to re-verify reports.
bool replay_witness(const nlohmann::json& witness);

}  // namespace mge
