#include "leleec/error.hpp"

namespace leleec {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::parse: return "parse";
        case ErrorKind::validation: return "validation";
        case ErrorKind::overlapping_input: return "overlapping_input";
        case ErrorKind::duplicate_candidate: return "duplicate_candidate";
        case ErrorKind::inconsistent_annotation: return "inconsistent_annotation";
        case ErrorKind::infeasible_assignment: return "infeasible_assignment";
        case ErrorKind::cost_mismatch: return "cost_mismatch";
        case ErrorKind::infeasible: return "infeasible";
        case ErrorKind::too_large: return "too_large";
        case ErrorKind::io: return "io";
    }
    return "?";
}

}  // namespace leleec
