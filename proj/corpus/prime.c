// Trial division: the exit test is nonlinear in the iteration variable.
// seed: n=97
// seed: n=91
int main(int n) {
  int d;
  int prime = 1;
  if (n < 2) {
    return 0;
  }
  if (n > 10000) {
    n = 10000;
  }
  d = 2;
  while (d * d <= n) {
    if (n % d == 0) {
      prime = 0;
    }
    d = d + 1;
  }
  return prime;
}
