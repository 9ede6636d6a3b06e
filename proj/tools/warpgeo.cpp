// Placeholder main; the scene runner lands with the cli module.
#include <cstdio>

int main() {
  std::puts("warpgeo: not wired up yet");
  return 0;
}
