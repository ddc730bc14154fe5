#ifndef ROADCOLOR_ERROR_HPP_
#define ROADCOLOR_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace roadcolor {

  enum class ErrorCode {
    invalid_graph,
    invalid_coloring,
    invalid_params,
    not_strongly_connected,
    generation_failed,
    no_breaking_edge,
    algorithm_stuck,
    precondition_violated,
    not_agw,
    no_stable_pair,
    invariant_violated,
    shape_mismatch,
    not_synchronizing,
    too_large,
    partition_not_found,
    parse_error,
  };

  std::string_view to_string(ErrorCode code) noexcept;

  // Single exception type for the library; callers dispatch on code().
  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          _code(code) {}

    [[nodiscard]] ErrorCode code() const noexcept {
      return _code;
    }

   private:
    ErrorCode _code;
  };

}  // namespace roadcolor

#endif  // ROADCOLOR_ERROR_HPP_
