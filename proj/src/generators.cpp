#include "prisyn/generators.hpp"

#include <sstream>

namespace prisyn {

std::string philosophers_text(std::size_t n) {
  if (n < 2) throw ModelError("philosophers need at least 2 seats");
  std::ostringstream out;
  auto prev = [n](std::size_t i) { return i == 1 ? n : i - 1; };
  out << "system {\n  interactions";
  for (std::size_t i = 1; i <= n; ++i) out << " take_left_" << i << " take_right_" << i << " release_" << i;
  out << ";\n";
  for (std::size_t i = 1; i <= n; ++i) {
    out << "  component p" << i << " {\n"
        << "    locations think hasLeft eat;\n"
        << "    init think;\n"
        << "    on take_left_" << i << " from think to hasLeft;\n"
        << "    on take_right_" << i << " from hasLeft to eat;\n"
        << "    on release_" << i << " from eat to think;\n"
        << "  }\n";
    out << "  component f" << i << " {\n"
        << "    locations free used;\n"
        << "    init free;\n"
        << "    on take_left_" << i << " from free to used;\n"
        << "    on release_" << i << " from used to free;\n"
        << "    on take_right_" << prev(i) << " from free to used;\n"
        << "    on release_" << prev(i) << " from used to free;\n"
        << "  }\n";
  }
  out << "}\n";
  return out.str();
}

System philosophers(std::size_t n) { return parse_system(philosophers_text(n)); }

namespace {

// Fault edges (c2,a) (c2,g) (c8,b); attractor c3..c7; c9 unreachable.
const char* kFig2 = R"(system {
  interactions a b c d e f g h r;
  component fig2 {
    locations c1 c2 c3 c4 c5 c6 c7 c8 c9;
    init c1;
    on a from c1 to c8;
    on d from c1 to c2;
    on e from c1 to c2;
    on a from c2 to c3;
    on g from c2 to c4;
    on b from c2 to c1;
    on c from c2 to c8;
    on f from c3 to c6;
    on f from c4 to c6;
    on h from c4 to c7;
    on f from c5 to c7;
    on r from c6 to c6;
    on r from c7 to c7;
    on a from c8 to c1;
    on b from c8 to c5;
    on a from c9 to c5;
    on b from c9 to c1;
  }
  risk { fig2@c6 }
  risk { fig2@c7 }
}
)";

const char* kFig3 = R"(system {
  interactions x y z a b r;
  component fig3 {
    locations c0 c1 c2 c3 bad;
    init c0;
    on x from c0 to c1;
    on y from c0 to c3;
    on z from c3 to c0;
    on a from c1 to bad;
    on b from c1 to c2;
    on b from c2 to bad;
    on a from c2 to c1;
    on r from bad to bad;
  }
  risk { fig3@bad }
}
)";

// C2 and C3 deadlock at (l21, l31): e needs C3 at l30, f needs C2 at l20.
const char* kFig4Core = R"(
  component C2 {
    locations l20 l21;
    init l20;
    on b from l20 to l21;
    on e from l21 to l20;
    on f from l20 to l20;
  }
  component C3 {
    locations l30 l31;
    init l30;
    on e from l30 to l31;
    on f from l31 to l30;
  }
)";

const char* kFig4Rest = R"(
  component C1 {
    locations l10 l11 l12;
    init l10;
    on a from l10 to l11;
    on b from l11 to l12;
    on c from l12 to l10;
  }
  component C4 {
    locations l40 l41;
    init l40;
    on g from l40 to l41;
    on h from l41 to l40;
  }
  component C5 {
    locations l50 l51;
    init l50;
    on h from l50 to l51;
    on g from l51 to l50;
  }
)";

const char* kFig6 = R"(system {
  interactions a b c;
  component C1 {
    locations l0 l1 l2;
    init l0;
    on a from l0 to l1;
    on b from l0 to l2;
  }
  component C2 {
    locations m0 m1 m2 m3;
    init m0;
    on b from m0 to m1;
    on c from m0 to m2;
    on a from m2 to m3;
  }
  priority b < a;
}
)";

// Reconstructed: the Master may take the two interrupts in either order, and
// each cycle has one order that ends in a mismatch deadlock. The two local
// repairs contradict each other.
const char* kDpu = R"(system {
  interactions start standby tick synch_int serial_int;
  component Master {
    locations idle cycle1 cycle2 paused mismatch;
    init idle;
    on start from idle to cycle1;
    on standby from idle to paused;
    on tick from paused to idle;
    on synch_int from cycle1 to mismatch;
    on serial_int from cycle1 to cycle2;
    on serial_int from cycle2 to mismatch;
    on synch_int from cycle2 to cycle1;
  }
  component Sensor {
    locations off sampling;
    init off;
    on start from off to sampling;
    on synch_int from sampling to sampling;
    on serial_int from sampling to sampling;
  }
  component SynchInt {
    locations ready;
    init ready;
    on synch_int from ready to ready;
  }
  component SerialInt {
    locations ready;
    vars lost;
    init ready [lost=0];
    on serial_int from ready to ready set lost := !lost;
  }
  component Clock {
    locations run;
    init run;
    on standby from run to run;
    on tick from run to run;
  }
}
)";

std::string fig4_text() {
  return std::string("system {\n  interactions a b c e f g h;") + kFig4Rest + kFig4Core + "}\n";
}

std::string fig4_sub_text() { return std::string("system {\n  interactions b e f;") + kFig4Core + "}\n"; }

}  // namespace

System fig2() { return parse_system(kFig2); }
System fig3() { return parse_system(kFig3); }
System fig4() { return parse_system(fig4_text()); }
System fig4_sub() { return parse_system(fig4_sub_text()); }
System fig6() { return parse_system(kFig6); }
System dpu() { return parse_system(kDpu); }

std::optional<std::string> builtin_text(const std::string& name) {
  if (name.rfind("phil-", 0) == 0) {
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(name.substr(5), &used);
      if (used != name.size() - 5) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    return philosophers_text(n);
  }
  if (name == "fig2") return std::string(kFig2);
  if (name == "fig3") return std::string(kFig3);
  if (name == "fig4") return fig4_text();
  if (name == "fig4-sub") return fig4_sub_text();
  if (name == "fig6") return std::string(kFig6);
  if (name == "dpu") return std::string(kDpu);
  return std::nullopt;
}

std::vector<std::string> builtin_names() { return {"phil-N", "fig2", "fig3", "fig4", "fig4-sub", "fig6", "dpu"}; }

}  // namespace prisyn
