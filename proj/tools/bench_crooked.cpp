#include <chrono>
#include <iostream>

#include "plf/crooked.hpp"

using namespace plf;

namespace {

double time_ms(bool (*fn)(const PLIntervalMap&, const std::vector<Rat>&,
                          CrookedCounterexample*),
               const PLIntervalMap& g, const std::vector<Rat>& net) {
  auto t0 = std::chrono::steady_clock::now();
  fn(g, net, nullptr);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
  PLIntervalMap g = plmap_identity();
  for (int i = 0; i < 4; ++i) g = crooked_refine(g);
  for (int denom : {6, 9, 12, 18, 24}) {
    Rat delta(1, denom);
    std::vector<Rat> net;
    for (Rat x = 0; x < 1; x += delta) net.push_back(x);
    net.push_back(1);
    double serial = time_ms(net_passes_serial, g, net);
    double parallel = time_ms(net_passes, g, net);
    std::cout << "net size " << net.size() << ": serial " << serial
              << " ms, parallel " << parallel << " ms, speedup "
              << (parallel > 0 ? serial / parallel : 0) << "x\n";
  }
  return 0;
}
