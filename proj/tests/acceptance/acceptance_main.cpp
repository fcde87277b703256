// Acceptance suite: one line per criterion, [PASS]/[FAIL], nonzero exit on
// any failure.
#include <cstdio>

int main() {
  std::printf("acceptance suite placeholder\n");
  return 1;
}
