#include "whk/kernel_model.hpp"

#include <cmath>
#include <stdexcept>

namespace whk {

namespace {

void validate_tag(const KernelModel& model, ClosedFormTag tag) {
    const double U = model.process().horizon();
    switch (tag) {
        case ClosedFormTag::Quadratic:
            if (model.terminal().kind() != TerminalFunction::Kind::Quadratic ||
                model.weight().kind() != WeightFunction::Kind::Affine ||
                model.weight().horizon_bound() != U) {
                throw std::invalid_argument(
                    "KernelModel: quadratic tag requires F = x^2 and w = U - t - u");
            }
            break;
        case ClosedFormTag::ExpQuadratic:
            if (model.terminal().kind() != TerminalFunction::Kind::ExpQuadratic ||
                model.weight().kind() != WeightFunction::Kind::Power ||
                model.weight().horizon_bound() != U) {
                throw std::invalid_argument(
                    "KernelModel: exp-quadratic tag requires the matching (F, w) pair");
            }
            break;
    }
}

}  // namespace

KernelModel::KernelModel(InformationModel process, TerminalFunction F, WeightFunction w,
                         std::optional<ClosedFormTag> tag, Dynamics dynamics)
    : process_(std::move(process)),
      terminal_(F),
      weight_(std::move(w)),
      tag_(tag),
      dynamics_(dynamics),
      lrb_(LrbDensitySpec::brownian()),
      lrb_terminal_(dynamics == Dynamics::LevyRandomBridge
                        ? lrb_terminal_law(process_)
                        : PriorLaw::point_mass(0.0)) {
    if (terminal_.kind() == TerminalFunction::Kind::ExpQuadratic &&
        terminal_.horizon() != process_.horizon()) {
        throw std::invalid_argument("KernelModel: terminal horizon must match the process");
    }
    const double wU = weight_.horizon_bound();
    if (!std::isnan(wU) && wU != process_.horizon()) {
        throw std::invalid_argument("KernelModel: weight horizon must match the process");
    }
    if (tag_) validate_tag(*this, *tag_);
}

}  // namespace whk
