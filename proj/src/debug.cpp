#include "diamond/debug.hpp"

#include <atomic>

namespace diamond::debug {

namespace {
std::atomic<Fault> g_fault{Fault::None};
}  // namespace

std::string_view to_string(Fault f) noexcept {
  switch (f) {
    case Fault::None: return "none";
    case Fault::BogoliubovClosedForm: return "bogoliubov";
    case Fault::PptEigenvalues: return "ppt";
    case Fault::LogNegativity: return "logneg";
    case Fault::MutualInformation: return "mutual-info";
    case Fault::DaveWeights: return "dave-weights";
    case Fault::GeometryInverse: return "geometry";
    case Fault::Squeezing: return "squeezing";
  }
  return "?";
}

std::vector<Fault> all_faults() {
  return {Fault::BogoliubovClosedForm, Fault::PptEigenvalues, Fault::LogNegativity, Fault::MutualInformation,
          Fault::DaveWeights,          Fault::GeometryInverse, Fault::Squeezing};
}

std::optional<Fault> parse_fault(std::string_view name) {
  if (name == "none") return Fault::None;
  for (Fault f : all_faults())
    if (to_string(f) == name) return f;
  return std::nullopt;
}

void inject(Fault f) noexcept { g_fault.store(f, std::memory_order_relaxed); }

Fault injected() noexcept { return g_fault.load(std::memory_order_relaxed); }

double factor(Fault f) noexcept { return (f != Fault::None && injected() == f) ? 1.0 + 1e-3 : 1.0; }

}  // namespace diamond::debug
