#pragma once

#include <stdexcept>
#include <string>

namespace ust {

// Error categories map onto CLI exit codes: input -> 2, domain -> 3,
// internal -> 4.
enum class ErrorCategory { input, domain, internal };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory cat, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what),
        category_(cat),
        name_(std::move(name)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& name() const noexcept { return name_; }

private:
  ErrorCategory category_;
  std::string name_;
};

#define UST_DEFINE_ERROR(NAME, CATEGORY)                        \
  class NAME : public Error {                                   \
  public:                                                       \
    explicit NAME(const std::string& what)                      \
        : Error(ErrorCategory::CATEGORY, #NAME, what) {}        \
  }

// graph_core
UST_DEFINE_ERROR(DisconnectedGraph, input);
UST_DEFINE_ERROR(NonPositiveWeight, input);
UST_DEFINE_ERROR(SelfLoop, input);
UST_DEFINE_ERROR(DuplicateEdge, input);
UST_DEFINE_ERROR(NonUniqueShortestPath, domain);

// measure
UST_DEFINE_ERROR(NegativeMass, input);
UST_DEFINE_ERROR(NegativeScale, input);

// ust
UST_DEFINE_ERROR(SupportOffGraph, input);
UST_DEFINE_ERROR(InvalidParams, input);

// slicing
UST_DEFINE_ERROR(NoValidRoot, domain);

// oracle
UST_DEFINE_ERROR(InvalidWeightSlope, input);
UST_DEFINE_ERROR(Unbalanced, input);
UST_DEFINE_ERROR(UnbalancedMasses, domain);
UST_DEFINE_ERROR(DegenerateCycling, internal);

// kernel
UST_DEFINE_ERROR(NonSymmetricInput, input);
UST_DEFINE_ERROR(NonPositiveT, input);

// graph_builders
UST_DEFINE_ERROR(EmptyCloud, input);
UST_DEFINE_ERROR(SingleNode, input);
UST_DEFINE_ERROR(DegenerateCentroids, domain);

// io / cli
UST_DEFINE_ERROR(ParseError, input);
UST_DEFINE_ERROR(FileError, input);

#undef UST_DEFINE_ERROR

}  // namespace ust
