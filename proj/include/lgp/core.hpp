// Basic value types and the error taxonomy shared by all modules.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace lgp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    double norm2() const { return x * x + y * y; }  // squared length
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }

struct BBox {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 1.0;
    double y1 = 1.0;
};

// Error categories; the CLI maps them to exit codes.
enum class Errc {
    config,        // bad parameter value or inconsistent configuration
    io,            // file missing, unreadable, or malformed
    lookup,        // unknown name (scenario, anisotropy spec)
    precondition,  // caller violated an API precondition
    numerical,     // NaN/Inf produced during iteration
    unsupported,   // operation not defined for this input kind
};

class Error : public std::runtime_error {
  public:
    Error(Errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace lgp
