#pragma once

#include <specon/rng.hpp>

namespace specon {

/// Checkpoint/restore delay. `mean` and `sd` describe the delivered delays;
/// draws come from a normal clipped to [lo, hi] whose latent parameters are
/// solved so that the clipped distribution has exactly these moments.
struct OverheadModel {
    double mean{3.0};
    double sd{1.43};
    double lo{0.5};
    double hi{5.0};

    void validate() const;
};

struct ClippedNormal {
    double mu{0.0};
    double sigma{0.0};
    double lo{0.0};
    double hi{0.0};

    double mean() const;
    double stddev() const;
    double sample(Rng& rng) const;
};

/// Latent normal whose clipped moments match the model. Throws when the
/// requested sd is unreachable inside the bounds.
ClippedNormal fit_overhead(const OverheadModel& model);

}  // namespace specon
