// Stride-3 and stride-4 loops, one of them with a != exit test.
// seed: base=5
int main(int base) {
  int i;
  int acc = 0;
  for (i = 0; i < 100; i += 3) {
    acc = acc + i;
  }
  for (i = 2; i != 42; i = i + 4) {
    acc = acc - base;
  }
  return acc;
}
