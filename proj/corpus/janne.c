// Two loops whose variables step each other.
// seed: a=1, b=1
int main(int a, int b) {
  if (a < 1) {
    a = 1;
  }
  if (a > 30) {
    a = 30;
  }
  b = 1;
  while (a < 30) {
    while (b < a) {
      if (b > 5) {
        b = b * 3;
      } else {
        b = b + 2;
      }
      if (b >= 10 && b <= 12) {
        a = a + 10;
      } else {
        a = a + 1;
      }
    }
    a = a + 2;
    b = b - 10;
  }
  return a;
}
