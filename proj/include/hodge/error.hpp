// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_ERROR_HPP
#define HODGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hodge
{

enum class ErrorCode
{
  InvalidArgument,
  InvalidDomain,
  Parse,
  InvertedSimplex,
  OrientationInconsistent,
  DanglingFace,
  DuplicateSimplex,
  EmptySelection,
  BoundarySelfIntersection,
  QualityUnreachable,
  MeshTooCoarse,
  NotConverged,
  AmbiguousKernel,
  RankAmbiguous,
  NotExact,
  NotCoboundary,
  UncoveredSimplex,
  CohomologyHypothesis,
  ConstraintRank,
  SingularPoint,
  MissingData,
  InsufficientLevels,
  NonMonotone,
  Infeasible,
  Io
};

const char *to_string(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

#define HODGE_REQUIRE(cond, code, msg)                                                   \
  do                                                                                     \
  {                                                                                      \
    if (!(cond))                                                                         \
    {                                                                                    \
      throw ::hodge::Error(code, msg);                                                   \
    }                                                                                    \
  } while (false)

}  // namespace hodge

#endif  // HODGE_ERROR_HPP
