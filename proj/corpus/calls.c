// Loops inside a helper called from a counting loop.
// seed: k=3
int total;

void accumulate(int m) {
  int t;
  for (t = 0; t < 5; t++) {
    total = total + m;
  }
}

int main(int k) {
  int i;
  total = 0;
  for (i = 1; i <= 8; i++) {
    accumulate(i * k);
  }
  return total;
}
