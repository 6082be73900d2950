// Evaluate the extremal cone averages and the rescaled operator on a smooth
// probe, then shrink eps and watch the averages settle onto the operator.

#include <cstdio>

#include <fpgame/expansion.hpp>
#include <fpgame/field.hpp>
#include <fpgame/operators.hpp>

using namespace fpgame;

int main() {
    const double p = 3.0, s = 0.75;
    const auto sch = make_scheme<2>(p, s);
    const auto probe = tilt_bump_probe();

    const double lsp = l_sp(probe, sch);
    std::printf("L_{s,p}[u](x0) = %.10f\n\n", lsp);

    std::printf("%10s  %16s  %16s  %12s\n", "eps", "l_eps", "|l_eps - L|", "budget");
    for (double eps = 0.125; eps > 0.01; eps *= 0.5) {
        const double le = l_epsilon<2>(probe.value, probe.anchor, eps, sch);
        const ExpansionBudget b = expansion_budget(probe, eps, sch);
        std::printf("%10.5f  %16.10f  %16.3e  %12.3e\n", eps, le, std::abs(le - lsp),
                    b.total());
    }
    std::puts("\nThe defect stays inside the budget and both shrink with eps.");
    return 0;
}
