#pragma once

#include <optional>

#include "whk/information_process.hpp"
#include "whk/lrb.hpp"
#include "whk/terminal.hpp"
#include "whk/weight.hpp"

namespace whk {

enum class ClosedFormTag { Quadratic, ExpQuadratic };

/// Whose dynamics drive the conditional expectations:
///   BridgeMeasure       the information process is a standard Brownian
///                       bridge (the pricing kernel carries the
///                       measure-change martingale separately)
///   LevyRandomBridge    real-measure dynamics through the LRB transition
///                       density
enum class Dynamics { BridgeMeasure, LevyRandomBridge };

/// Bundle (process, F, w) defining a weighted-heat-kernel pricing kernel.
class KernelModel {
public:
    KernelModel(InformationModel process, TerminalFunction F, WeightFunction w,
                std::optional<ClosedFormTag> tag = std::nullopt,
                Dynamics dynamics = Dynamics::BridgeMeasure);

    const InformationModel& process() const { return process_; }
    const TerminalFunction& terminal() const { return terminal_; }
    const WeightFunction& weight() const { return weight_; }
    std::optional<ClosedFormTag> closed_form_tag() const { return tag_; }
    Dynamics dynamics() const { return dynamics_; }

    /// LRB density machinery for LevyRandomBridge dynamics (Brownian rho
    /// with the sigma*U-scaled terminal law); for BridgeMeasure dynamics
    /// the equivalent point-mass-at-zero bridge density.
    const LrbDensitySpec& lrb_density() const { return lrb_; }
    const PriorLaw& lrb_terminal() const { return lrb_terminal_; }

private:
    InformationModel process_;
    TerminalFunction terminal_;
    WeightFunction weight_;
    std::optional<ClosedFormTag> tag_;
    Dynamics dynamics_;
    LrbDensitySpec lrb_;
    PriorLaw lrb_terminal_;
};

}  // namespace whk
