#pragma once

#include <stdexcept>
#include <string>

namespace gkz {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Mathematical precondition failures (CLI exit code 2).
struct NotHomogeneous : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct NonGenericWeight : Error { using Error::Error; };
struct NotSublattice : Error { using Error::Error; };
struct SpanMismatch : Error { using Error::Error; };
struct NotSimplex : Error { using Error::Error; };
struct NoSingleCellWeight : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };

// Enumeration budget hit before closure (CLI exit code 3).
struct BudgetExceeded : Error { using Error::Error; };

// A cross-check between two independently computed quantities failed.
struct InternalInconsistency : Error { using Error::Error; };

}  // namespace gkz
