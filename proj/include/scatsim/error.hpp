#pragma once

#include <stdexcept>
#include <string>

namespace scatsim {

enum class Errc {
  piconet_full,
  duplicate_master,
  duplicate_member,
  already_member,
  unknown_node,
  unknown_piconet,
  empty_scatternet,
  payload_too_large,
  no_such_link,
  route_already_known,
  not_a_neighbor,
  no_candidates,
  time_in_past,
  unknown_packet,
  double_terminal,
  bad_interval,
  syntax_error,
  semantic_error,
  io_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::piconet_full: return "PiconetFull";
    case Errc::duplicate_master: return "DuplicateMaster";
    case Errc::duplicate_member: return "DuplicateMember";
    case Errc::already_member: return "AlreadyMember";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::unknown_piconet: return "UnknownPiconet";
    case Errc::empty_scatternet: return "EmptyScatternet";
    case Errc::payload_too_large: return "PayloadTooLarge";
    case Errc::no_such_link: return "NoSuchLink";
    case Errc::route_already_known: return "RouteAlreadyKnown";
    case Errc::not_a_neighbor: return "NotANeighbor";
    case Errc::no_candidates: return "NoCandidates";
    case Errc::time_in_past: return "TimeInPast";
    case Errc::unknown_packet: return "UnknownPacket";
    case Errc::double_terminal: return "DoubleTerminal";
    case Errc::bad_interval: return "BadInterval";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::semantic_error: return "SemanticError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace scatsim
