// Iterative Fibonacci with a clamped input bound.
// seed: n=10
// seed: n=100
int main(int n) {
  int i;
  int a = 0;
  int b = 1;
  int t;
  if (n > 30) {
    n = 30;
  }
  for (i = 2; i <= n; i++) {
    t = a + b;
    a = b;
    b = t;
  }
  return b;
}
