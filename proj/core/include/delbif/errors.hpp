#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace delbif {

/// Malformed input data (bad file, bad flags, inconsistent columns).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Two input points coincide.  The construction refuses to deduplicate
/// silently because grading depends on every input line.
class DuplicatePointError : public InputError {
 public:
  DuplicatePointError(int first_index, int second_index)
      : InputError("duplicate point: input points " +
                   std::to_string(first_index) + " and " +
                   std::to_string(second_index) + " coincide"),
        first(first_index),
        second(second_index) {}
  int first;
  int second;
};

/// General position violated: an exact predicate returned ZERO/ON during
/// construction.  Callers may retry with a jittered input.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(std::vector<int> point_indices)
      : std::runtime_error(make_message(point_indices)),
        points(std::move(point_indices)) {}
  std::vector<int> points;

 private:
  static std::string make_message(const std::vector<int>& idx) {
    std::string m = "degenerate input (general position violated); points:";
    for (int i : idx) m += " " + std::to_string(i);
    return m;
  }
};

}  // namespace delbif
