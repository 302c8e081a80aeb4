#pragma once

#include <stdexcept>
#include <string>

namespace mge {

// Every engine failure carries a stable kind string so reports and the CLI
// can name it without RTTI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define MGE_DECLARE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

MGE_DECLARE_ERROR(ParseError)
MGE_DECLARE_ERROR(InvalidAction)
MGE_DECLARE_ERROR(CentralIdentificationError)
MGE_DECLARE_ERROR(OrderLimitExceeded)
MGE_DECLARE_ERROR(SubgroupLimitExceeded)
MGE_DECLARE_ERROR(NotNormal)
MGE_DECLARE_ERROR(UnknownGenerator)
MGE_DECLARE_ERROR(UnknownLabel)
MGE_DECLARE_ERROR(OutOfRange)
MGE_DECLARE_ERROR(SearchBudgetExceeded)
MGE_DECLARE_ERROR(AutBudgetExceeded)
MGE_DECLARE_ERROR(TierLimitExceeded)
MGE_DECLARE_ERROR(IncompleteSeedSet)
MGE_DECLARE_ERROR(IncompleteCertificates)

#undef MGE_DECLARE_ERROR

}  // namespace mge
