// Solves N_{3,5,3} with 2-dimensional vectors over F_2, sends one message and
// decodes it at every receiver.

#include <iostream>
#include <random>

#include "netgap/netgap.hpp"

int main() {
  using namespace netgap;
  const Network net = combination_network(3, 5, 3);
  const NetworkCode code = vector_solve_combination(net, Field::make(2, 1), 2);
  const auto rep = verify_solution(net, code);
  std::cout << "receivers at rank " << rep.required_rank << ": " << rep.passed << "/" << rep.records.size() << '\n';

  std::mt19937_64 rng(7);
  const Message msg = random_message(code.field, code.width(), rng);
  const auto obs = simulate(net, code, msg);
  std::size_t exact = 0;
  for (std::size_t p = 0; p < obs.size(); ++p) exact += decode_receiver(net, code, p, obs[p]) == msg;
  std::cout << "exact decodes: " << exact << "/" << obs.size() << '\n';
  return exact == obs.size() && rep.solved() ? 0 : 1;
}
