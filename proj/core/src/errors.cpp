#include "stablereg/errors.hpp"

namespace stablereg {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::empty_side: return "EmptySide";
    case Errc::side_mismatch: return "SideMismatch";
    case Errc::zero_measure_part: return "ZeroMeasurePart";
    case Errc::no_splitter: return "NoSplitter";
    case Errc::iteration_cap_exceeded: return "IterationCapExceeded";
    case Errc::invalid_epsilon: return "InvalidEpsilon";
    case Errc::empty_input: return "EmptyInput";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::part_too_large: return "PartTooLarge";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::invalid_measure: return "InvalidMeasure";
    case Errc::parse_error: return "ParseError";
    case Errc::internal: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace stablereg
