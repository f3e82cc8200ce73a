// Loops counting down with >= and > exit tests.
// seed: v=3
int main(int v) {
  int i;
  int j;
  int r = 0;
  for (i = 50; i >= 1; i--) {
    r = r + v;
  }
  i = 40;
  while (i > 0) {
    for (j = i; j >= 30; j = j - 5) {
      r = r + 1;
    }
    i = i - 8;
  }
  return r;
}
