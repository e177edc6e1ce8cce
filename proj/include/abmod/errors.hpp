#ifndef ABMOD_ERRORS_HPP
#define ABMOD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abmod {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Constant term vanishes, series has no inverse.
struct NotAUnit : Error {
    NotAUnit() : Error("series is not a unit (constant term is zero)") {}
};

// A computation needed more b-orders than the working truncation provides.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what)
        : Error("precision exhausted: " + what) {}
};

// Saturation kept growing past the iteration cap.  This is a certificate
// boundary, not a proof of non-regularity.
struct NotRegular : Error {
    explicit NotRegular(int iterations)
        : Error("saturation did not stabilize within " +
                std::to_string(iterations) + " iterations"),
          iterations(iterations) {}
    int iterations;
};

struct IterationCap : Error {
    explicit IterationCap(const std::string& what)
        : Error("iteration cap reached: " + what) {}
};

struct NotSimplePole : Error {
    NotSimplePole() : Error("module is not a simple pole module") {}
};

// Jordan chain lifting: beta - m is an eigenvalue for some integer m >= 1.
struct NotMinimalInClass : Error {
    explicit NotMinimalInClass(const std::string& what)
        : Error("spectral value not minimal in its class mod Z: " + what) {}
};

// Jordan chain lifting: no Jordan block of the requested size.
struct NoSuchBlock : Error {
    explicit NoSuchBlock(const std::string& what)
        : Error("no Jordan block of the requested size: " + what) {}
};

struct GenerationFailed : Error {
    explicit GenerationFailed(const std::string& what)
        : Error("random module generation failed: " + what) {}
};

// Text format errors carry a position.
struct ParseError : Error {
    ParseError(int line, int column, const std::string& what)
        : Error("parse error at " + std::to_string(line) + ":" +
                std::to_string(column) + ": " + what),
          line(line), column(column) {}
    int line;
    int column;
};

}  // namespace abmod

#endif
