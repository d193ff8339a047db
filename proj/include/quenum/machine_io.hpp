#pragma once

#include <string>

#include "quenum/dynamics.hpp"

namespace quenum {

/// Loads a machine description. Accepts either a "builtin:..." name or a path
/// to a JSON spec file with fields {L, kind: dense|program|branching|random|
/// phased, entries|programs|seed, alphabet, pad, horizon}; complex entries are
/// [re, im] pairs in row-major order.
///
/// Builtin grammar:
///   builtin:blank
///   builtin:program:EXPR[,EXPR...]
///   builtin:branching:W,EXPR[,EXPR...]|W[,EXPR...]|...
///   builtin:random:SEED[:L]
///   builtin:phased:SEED[:L]
MachineSpec load_machine(const std::string& name_or_path);

/// Parses a JSON document (already read) into a machine spec.
MachineSpec parse_machine_json(const std::string& text,
                               const std::string& tag);

}  // namespace quenum
