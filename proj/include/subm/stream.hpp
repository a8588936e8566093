#pragma once
// Lazy monotone enumerations of infinite (or long finite) subsets of the
// naturals.  A stream yields strictly increasing elements one at a time;
// consumers decide how far to walk and account for their own budgets.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subm/finset.hpp"
#include "subm/rational.hpp"

namespace subm {

class SetStream {
 public:
  using NextFn = std::function<std::optional<Nat>()>;

  explicit SetStream(NextFn next, std::string name = "stream")
      : next_(std::move(next)), name_(std::move(name)) {}

  // Per-element annotations, when the source knows them.
  std::optional<std::function<ExtRat(Nat)>> point_value;
  std::optional<std::function<Nat(Nat, const Rat&)>> modulus;

  std::optional<Nat> next() {
    auto v = next_();
    if (!v) return std::nullopt;
    if (last_ && *v <= *last_)
      throw DomainError("SetStream '" + name_ + "': enumeration not strictly increasing");
    last_ = *v;
    return v;
  }

  const std::string& name() const { return name_; }

  // Up to `count` further elements.
  std::vector<Nat> take(std::size_t count) {
    std::vector<Nat> out;
    out.reserve(count);
    while (out.size() < count) {
      auto v = next();
      if (!v) break;
      out.push_back(*v);
    }
    return out;
  }

  static SetStream from_sorted(std::vector<Nat> xs, std::string name = "explicit") {
    auto pos = std::make_shared<std::size_t>(0);
    auto data = std::make_shared<std::vector<Nat>>(std::move(xs));
    return SetStream(
        [pos, data]() -> std::optional<Nat> {
          if (*pos >= data->size()) return std::nullopt;
          return (*data)[(*pos)++];
        },
        std::move(name));
  }

  static SetStream iota(Nat start = 0, std::string name = "naturals") {
    auto n = std::make_shared<Nat>(start);
    return SetStream([n]() -> std::optional<Nat> { return (*n)++; }, std::move(name));
  }

  // All naturals satisfying `keep`, never probing past `probe_limit`.
  static SetStream filtered(std::function<bool(Nat)> keep, Nat start = 0,
                            Nat probe_limit = Nat(1) << 40,
                            std::string name = "filtered") {
    auto n = std::make_shared<Nat>(start);
    return SetStream(
        [n, keep = std::move(keep), probe_limit]() -> std::optional<Nat> {
          while (*n < probe_limit) {
            Nat v = (*n)++;
            if (keep(v)) return v;
          }
          return std::nullopt;
        },
        std::move(name));
  }

 private:
  NextFn next_;
  std::string name_;
  std::optional<Nat> last_;
};

}  // namespace subm
