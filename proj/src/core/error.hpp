#pragma once

#include <stdexcept>
#include <string>

namespace ecocut {

enum class errc {
    invalid_argument,
    duplicate_edge,
    self_loop,
    non_positive_weight,
    id_out_of_range,
    graph_disconnected,
    not_a_spanning_tree,
    length_mismatch,
    rank_too_large,
    not_symmetric,
    no_convergence,
    too_small,
    invalid_n,
    empty,
    dimension_mismatch,
    singleton_component,
    no_such_edge,
    duplicate_edge_in_request,
    not_an_eigenpair,
    cannot_connect,
    bad_probability,
    parse_error,
    validation_error,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace ecocut
