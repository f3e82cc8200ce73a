// Triangular nest with a stride-2 inner loop counting down.
// seed: x=1
int main(int x) {
  int i;
  int j;
  int hits = 0;
  for (i = 0; i < 10; ++i)
    for (j = i; j > 0; j -= 2)
      hits = hits + x;
  return hits;
}
