"""The poset of total 2-orders on two points is a circle."""

from operad_wb import milgram

P = milgram.build(2, 2)
s = milgram.order_complex(P)
print("elements:", len(P))
print("chains by length:", s.chains)
print("euler:", s.euler, "connected:", s.connected)
print()
print(milgram.to_dot(P))
