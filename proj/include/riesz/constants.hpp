#pragma once

#include <string>
#include <vector>

#include "riesz/errors.hpp"

namespace riesz {

enum class BoundKind { lower, upper, exact };
const char* to_string(BoundKind kind);

struct LedgerEntry {
  std::string name;
  long double value = 0.0L;
  BoundKind kind = BoundKind::exact;  // which side the stored value errs on
  std::string formula;
  std::string role;
};

/// Thrown when a stage reads an entry the ledger does not hold.
class MissingEntryError : public CertificationError {
 public:
  explicit MissingEntryError(const std::string& name)
      : CertificationError("constant ledger: missing entry '" + name + "'"), name_(name) {}
  const std::string& entry() const { return name_; }

 private:
  std::string name_;
};

/// Named constants for one (N, delta), in insertion order.
class ConstantLedger {
 public:
  ConstantLedger(int dim, double delta);

  int dim() const { return dim_; }
  double delta() const { return delta_; }

  /// Replaces an entry of the same name. Throws CertificationError unless the value is positive and finite.
  void set(LedgerEntry entry);
  bool contains(const std::string& name) const;
  const LedgerEntry& at(const std::string& name) const;
  long double value(const std::string& name) const { return at(name).value; }
  const std::vector<LedgerEntry>& entries() const { return entries_; }

 private:
  int dim_;
  double delta_;
  std::vector<LedgerEntry> entries_;
};

struct ChainOptions {
  int a_scan_points = 1000;    // tau, Gamma and A over the admissible range of R~/(2R)
  int phi_pair_points = 200;   // pairs certified for the phi bounds
  int phi_scan_points = 1000;  // radial points per phi certificate
  int ell_max = 200;
  int sup_scan_points = 400;   // u-grid for the interaction remainder, theta- and a-grids for the self term
  double safety_lower = 0.9;
  double safety_upper = 1.1;
};

/// Entries produced by the geometry, spectral and centering modules.
const std::vector<std::string>& upstream_entry_names();

/// Scans the admissible range for (N, delta) and records the upstream entries. N >= 2.
ConstantLedger certify_upstream(int dim, double delta, const ChainOptions& opt = {});

/// tau > 0 check, C1, C2, C2', the remainder constants, theta_{N,delta}, c and C of the shell-sandwiched bound.
/// Throws CertificationError when tau <= 0.
void prop2_constants(ConstantLedger& ledger, const ChainOptions& opt = {});
/// K, the four alpha caps, alpha and the reduced constant.
void prop3_constants(ConstantLedger& ledger);
/// c', the characteristic-function constant, c'' and the final constant.
void theorem_constants(ConstantLedger& ledger);

/// Copies the upstream entries and runs the three stages.
ConstantLedger assemble(const ConstantLedger& upstream, const ChainOptions& opt = {});
ConstantLedger constant_ledger(int dim, double delta, const ChainOptions& opt = {});

/// inf over 0 <= t <= 1 of t^2 + b (1 - t) for b >= 0.
long double quadratic_floor(long double b);

/// Measure of {(w, w') in S x S : | |w - w'| - chord | < width}.
double chord_band_measure(int dim, double chord, double width);

}  // namespace riesz
