#pragma once

#include <stdexcept>
#include <string>

namespace tacchi {

/// Base class for all tacchi errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simulation setup / stepping
class GridTooSmall : public Error { public: using Error::Error; };
class EmptyScene : public Error { public: using Error::Error; };
class OutOfGrid : public Error { public: using Error::Error; };
class DegenerateF : public Error { public: using Error::Error; };

// Geometry I/O
class ParseError : public Error { public: using Error::Error; };
class EmptyCloud : public Error { public: using Error::Error; };

// Depth / rendering
class NoSurface : public Error { public: using Error::Error; };
class CropOutOfBounds : public Error { public: using Error::Error; };

// Metrics
class ShapeMismatch : public Error { public: using Error::Error; };

// Bridge
class SessionNotInitialized : public Error { public: using Error::Error; };
class NonMonotonicTime : public Error { public: using Error::Error; };
class ProtocolError : public Error { public: using Error::Error; };

// Dataset / config
class ManifestMismatch : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

}  // namespace tacchi
