#pragma once
#include <stdexcept>
#include <string>

namespace sl2h {

// Every failure carries a stable machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }
  // resource errors map to exit code 3, everything else to 1 or 2 at the CLI
  bool is_resource() const {
    return kind_ == "SupportOverflow" || kind_ == "OutOfMemoryBudget" || kind_ == "ScaleExceeded";
  }

 private:
  std::string kind_;
};

#define SL2H_ERR(kind, msg) ::sl2h::Error(kind, msg)

}  // namespace sl2h
