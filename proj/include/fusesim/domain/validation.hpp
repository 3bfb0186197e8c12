#pragma once

#include <string>
#include <vector>

#include "fusesim/domain/types.hpp"

namespace fusesim {

enum class ViolationKind {
  kMissingTask,       // an app task appears in no group
  kUnknownTask,       // a group member or home entry names no app task
  kEmptyGroup,        // a group without members
  kDuplicateGroupId,  // two groups share an id
  kMissingHome,       // an app task has no home entry
  kUnknownHomeGroup,  // home points at a group id that does not exist
  kHomeNotMember,     // home(t) = g but t is not a member of g
  kInvalidMemory,     // a group's memory size is not a configured size
  kUnknownCallee,     // app: an edge names no task
  kSelfCall,          // app: a task calls itself
  kUnknownRoot,       // app: a root names no task
  kNoRoots,           // app: empty root set
  kDuplicateTask,     // app: two tasks share an id
  kInvalidTask,       // app: negative work, parallelism < 1, negative I/O
};

struct Violation {
  ViolationKind kind;
  std::string task;
  std::string group;

  std::string ToString() const;
  bool operator==(const Violation&) const = default;
};

// Empty iff every FusionSetup invariant holds against `app`. When `cfg` is
// given, group memory sizes are also checked against its candidate sizes.
std::vector<Violation> ValidateSetup(const FusionSetup& setup, const AppSpec& app,
                                     const PlatformConfig* cfg = nullptr);

// Empty iff every AppSpec/TaskSpec/CallEdge invariant holds. Cycles between
// distinct tasks are accepted.
std::vector<Violation> ValidateApp(const AppSpec& app);

// Throws ConfigError listing every violation, if any.
void RequireValidApp(const AppSpec& app);
void RequireValidSetup(const FusionSetup& setup, const AppSpec& app, const PlatformConfig* cfg = nullptr);

}  // namespace fusesim
