// A counting loop with a data-dependent break and a second exit test.
// seed: target=30
// seed: target=-1
int v[50];

int main(int target) {
  int i;
  int pos = -1;
  for (i = 0; i < 50; i++) {
    v[i] = i * 2;
  }
  for (i = 0; i < 50 && pos < 0; i++) {
    if (v[i] == target) {
      pos = i;
      break;
    }
  }
  return pos;
}
