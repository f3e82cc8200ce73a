// Bubble sort over a fixed-size array; the inner range shrinks with i.
// seed: seed=7
// seed: seed=-3
int a[32];

int main(int seed) {
  int i;
  int j;
  int t;
  for (i = 0; i < 32; i++) {
    a[i] = (seed * (i + 13)) % 97;
  }
  for (i = 0; i < 31; i++) {
    for (j = 0; j < 31 - i; j++) {
      if (a[j] > a[j + 1]) {
        t = a[j];
        a[j] = a[j + 1];
        a[j + 1] = t;
      }
    }
  }
  return a[0];
}
