#pragma once

#include <stdexcept>
#include <string>

namespace ddsim {

/// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flow statistics requested on a window that recorded no packets.
struct EmptyTableError : Error {
  using Error::Error;
};

/// Per-flow query for a flow the table does not hold.
struct MissingFlowError : Error {
  using Error::Error;
};

/// baseline_update called while the baseline is frozen (caller bug).
struct FrozenBaselineError : Error {
  using Error::Error;
};

/// Window test requested before the baseline absorbed enough windows.
struct InsufficientBaselineError : Error {
  using Error::Error;
};

/// Traceback request arrived at a router already on its hop path.
struct CycleError : Error {
  using Error::Error;
};

/// Configuration violates a documented invariant (exit code 1 at the CLI).
struct ConfigError : Error {
  using Error::Error;
};

/// Input file could not be parsed; message carries line/field context.
struct ParseError : Error {
  using Error::Error;
};

struct UnknownPresetError : ConfigError {
  using ConfigError::ConfigError;
};

struct UnknownParameterError : ConfigError {
  using ConfigError::ConfigError;
};

/// Filesystem failure, message carries the offending path.
struct IoError : Error {
  using Error::Error;
};

}  // namespace ddsim
