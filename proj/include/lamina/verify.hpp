#ifndef LAMINA_VERIFY_HPP
#define LAMINA_VERIFY_HPP

#include <string>
#include <vector>

#include "lamina/rectcomplex.hpp"

namespace lamina {
namespace verify {

enum class Status { Verified, Refuted, UnknownAtDepth, Skipped };

struct CheckResult {
    std::string id;
    std::string anchor;  // which construction or lemma-level fact the check pins down
    Status status = Status::Skipped;
    std::string details;
    double millis = 0;
};

struct VerificationReport {
    std::string suite;
    int depth = 0;
    std::vector<CheckResult> checks;

    bool allVerified() const;
    int refutedCount() const;
    std::string toJson() const;
    std::string toText() const;
};

/// Runs the full acceptance suite. `depth` is the global depth knob (window
/// lengths for the censuses); individual checks pin their own parameters.
/// Independent checks run concurrently unless `serial` is set.
VerificationReport runAcceptance(int depth = 16, bool serial = false);

/// The canonical renormalization cut of a quartering-family complex: the two
/// lowest-level interior saddle connections per cover copy.
std::vector<SaddleConnection> redConnections(const RectComplex& g);

}  // namespace verify
}  // namespace lamina

#endif
