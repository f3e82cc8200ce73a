// Recursive factorial: no loops at all.
// seed: n=6
int fact(int n) {
  int r;
  if (n <= 1) {
    return 1;
  }
  r = fact(n - 1);
  return n * r;
}

int main(int n) {
  int x;
  x = fact(n);
  return x;
}
