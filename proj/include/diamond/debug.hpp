#pragma once

// Fault injection for negative controls. A single process-wide switch
// perturbs one closed form by a relative 1e-3 so the check that guards it
// must fail. Never set outside `selftest --inject` and the tests.

#include <optional>
#include <string_view>
#include <vector>

namespace diamond::debug {

enum class Fault {
  None,
  BogoliubovClosedForm,
  PptEigenvalues,
  LogNegativity,
  MutualInformation,
  DaveWeights,
  GeometryInverse,
  Squeezing,
};

std::string_view to_string(Fault f) noexcept;
std::optional<Fault> parse_fault(std::string_view name);
std::vector<Fault> all_faults();

void inject(Fault f) noexcept;
Fault injected() noexcept;

/// 1 + 1e-3 when `f` is the injected fault, 1 otherwise.
double factor(Fault f) noexcept;

/// Restores the previous fault on scope exit.
class ScopedFault {
 public:
  explicit ScopedFault(Fault f) noexcept : prev_(injected()) { inject(f); }
  ~ScopedFault() { inject(prev_); }
  ScopedFault(const ScopedFault&) = delete;
  ScopedFault& operator=(const ScopedFault&) = delete;

 private:
  Fault prev_;
};

}  // namespace diamond::debug
