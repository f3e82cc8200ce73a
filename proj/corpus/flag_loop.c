// A while(p) loop whose exit is a flag set inside the body.
// seed: p=1, limit=12
// seed: p=0, limit=5
int main(int p, int limit) {
  int steps = 0;
  while (p) {
    steps = steps + 1;
    if (steps >= limit) {
      p = 0;
    }
  }
  return steps;
}
