#pragma once

#include <stdexcept>
#include <string>

namespace necklace {

enum class errc {
  invalid_trace,
  not_central,
  name_clash,
  unsupported_dimension,
  space_mismatch,
  unknown_arrow,
  degree_window,
  degenerate_pairing,
  not_connective,
  quintuple_invalid,
  cap_insufficient,
  not_closed,
  not_normal_form,
  bad_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_trace: return "InvalidTrace";
    case errc::not_central: return "NotCentral";
    case errc::name_clash: return "NameClash";
    case errc::unsupported_dimension: return "UnsupportedDimension";
    case errc::space_mismatch: return "SpaceMismatch";
    case errc::unknown_arrow: return "UnknownArrow";
    case errc::degree_window: return "DegreeWindow";
    case errc::degenerate_pairing: return "DegeneratePairing";
    case errc::not_connective: return "NotConnective";
    case errc::quintuple_invalid: return "QuintupleInvalid";
    case errc::cap_insufficient: return "CapInsufficient";
    case errc::not_closed: return "NotClosed";
    case errc::not_normal_form: return "NotNormalForm";
    case errc::bad_input: return "BadInput";
  }
  return "Error";
}

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace necklace
