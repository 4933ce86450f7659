#pragma once

#include <cstdint>

namespace crtspec {

/// Tally of field operations for one instrumented run. Each run owns its
/// counter; nothing here is global.
struct OpCounter {
  std::uint64_t xor_count = 0;        // field additions
  std::uint64_t mul_count = 0;        // field multiplications
  std::uint64_t reduction_count = 0;  // modular reductions after a multiply
  std::uint64_t integer_ops = 0;      // CRT reconstruction arithmetic (not field ops)

  std::uint64_t field_ops() const noexcept { return xor_count + mul_count + reduction_count; }

  OpCounter& operator+=(const OpCounter& o) noexcept {
    xor_count += o.xor_count;
    mul_count += o.mul_count;
    reduction_count += o.reduction_count;
    integer_ops += o.integer_ops;
    return *this;
  }

  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

}  // namespace crtspec
